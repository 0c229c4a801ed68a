#include "rvegen/rsa.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <type_traits>

#include "rvegen/periodic.hpp"
#include "rvegen/rng.hpp"
#include "rvegen/simd/kernels.hpp"

namespace rvegen {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::CylindersFirst: return "cylinders-first";
        case Strategy::SpheresFirst: return "spheres-first";
        case Strategy::Interleaved: return "interleaved";
    }
    return "?";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
    if (name == "cylinders-first") return Strategy::CylindersFirst;
    if (name == "spheres-first") return Strategy::SpheresFirst;
    if (name == "interleaved") return Strategy::Interleaved;
    return std::nullopt;
}

std::pair<double, double> radii_from_fractions(double f_s, double f_c, int n_s, int n_c,
                                               double aspect) {
    if (f_s < 0 || f_c < 0 || f_s + f_c >= 1.0)
        throw std::invalid_argument("volume fractions must satisfy 0 <= f_s + f_c < 1");
    if (f_s > 0 && n_s <= 0)
        throw std::invalid_argument("nonzero sphere fraction with zero sphere count");
    if (f_c > 0 && n_c <= 0)
        throw std::invalid_argument("nonzero cylinder fraction with zero cylinder count");
    if (n_c > 0 && !(aspect > 0 && std::isfinite(aspect)))
        throw std::invalid_argument("aspect ratio must be finite and positive");

    double r_s = 0.0, r_c = 0.0;
    if (n_s > 0 && f_s > 0) {
        r_s = std::cbrt(3.0 * f_s / (4.0 * M_PI * double(n_s)));
        if (2.0 * r_s >= 1.0)
            throw std::invalid_argument("derived sphere radius exceeds the cell size");
    }
    if (n_c > 0 && f_c > 0) {
        r_c = std::cbrt(f_c / (2.0 * M_PI * aspect * double(n_c)));
        if (2.0 * aspect * r_c >= 1.0)
            throw std::invalid_argument(
                "derived cylinder length exceeds the cell size; the cylinder count must "
                "exceed (4/pi) * f_c * a^2");
    }
    return {r_s, r_c};
}

void validate_config(const RsaConfig& cfg) {
    radii_from_fractions(cfg.f_s, cfg.f_c, cfg.n_s, cfg.n_c, cfg.aspect);
    if (cfg.max_attempts_per_object <= 0)
        throw std::invalid_argument("max_attempts_per_object must be positive");
    if (!(cfg.time_budget_s > 0))
        throw std::invalid_argument("time_budget_s must be positive");
}

namespace {

// Population kept in SoA form for the broad-phase kernel.
struct Population {
    std::vector<double> xs, ys, zs;
    std::vector<double> sphere_reach; // candidate-dependent, rebuilt per phase
    std::vector<double> bound;        // bounding radius per inclusion
    std::vector<std::uint8_t> hits;
    RveSample sample;

    void push(const SphereInc& s) {
        sample.spheres.push_back(s);
        rebuild();
    }
    void push(const CylinderInc& c) {
        sample.cylinders.push_back(c);
        rebuild();
    }
    // Rebuild keeps sphere-then-cylinder global order aligned with RveSample.
    void rebuild() {
        const int n = sample.size();
        xs.resize(n);
        ys.resize(n);
        zs.resize(n);
        bound.resize(n);
        hits.resize(n);
        for (int i = 0; i < n; ++i) {
            const Vec3& c = sample.center(i);
            xs[i] = c.x;
            ys[i] = c.y;
            zs[i] = c.z;
            bound[i] = sample.bounding_radius_of(i);
        }
    }
};

// True when the candidate overlaps anything already placed (or its own
// periodic images). The kernel prefilter compares minimum-image center
// distances against bounding-radius sums; survivors get the exact periodic
// test.
template <class Shape>
bool conflicts(const Shape& cand, Population& pop, std::vector<double>& reach_buf) {
    if (self_image_any(cand)) return true;

    const int n = pop.sample.size();
    if (n == 0) return false;
    const double rc = bounding_radius(cand);
    reach_buf.resize(n);
    for (int i = 0; i < n; ++i) reach_buf[i] = rc + pop.bound[i];

    kernels::active().center_prefilter(pop.xs.data(), pop.ys.data(), pop.zs.data(),
                                       reach_buf.data(), std::size_t(n), cand.center.x,
                                       cand.center.y, cand.center.z, pop.hits.data());

    const int ns = pop.sample.n_spheres();
    for (int i = 0; i < n; ++i) {
        if (!pop.hits[i]) continue;
        bool hit;
        if (i < ns) {
            hit = periodic_any(pop.sample.spheres[i], cand);
        } else if constexpr (std::is_same_v<Shape, SphereInc>) {
            hit = periodic_any(cand, pop.sample.cylinders[i - ns]);
        } else {
            hit = periodic_any(pop.sample.cylinders[i - ns], cand);
        }
        if (hit) return true;
    }
    return false;
}

// Interleaved order: largest-remainder schedule so placed counts stay
// proportional to the targets at every prefix.
std::vector<bool> build_order(const RsaConfig& cfg) {
    std::vector<bool> is_cyl;
    is_cyl.reserve(std::size_t(cfg.n_s + cfg.n_c));
    switch (cfg.strategy) {
        case Strategy::CylindersFirst:
            is_cyl.insert(is_cyl.end(), std::size_t(cfg.n_c), true);
            is_cyl.insert(is_cyl.end(), std::size_t(cfg.n_s), false);
            break;
        case Strategy::SpheresFirst:
            is_cyl.insert(is_cyl.end(), std::size_t(cfg.n_s), false);
            is_cyl.insert(is_cyl.end(), std::size_t(cfg.n_c), true);
            break;
        case Strategy::Interleaved: {
            int placed_c = 0, placed_s = 0;
            const int total = cfg.n_s + cfg.n_c;
            for (int k = 1; k <= total; ++k) {
                int want_c = int(std::llround(double(k) * cfg.n_c / double(total)));
                if (want_c > placed_c && placed_c < cfg.n_c) {
                    is_cyl.push_back(true);
                    ++placed_c;
                } else if (placed_s < cfg.n_s) {
                    is_cyl.push_back(false);
                    ++placed_s;
                } else {
                    is_cyl.push_back(true);
                    ++placed_c;
                }
            }
            break;
        }
    }
    return is_cyl;
}

} // namespace

RsaResult generate(const RsaConfig& cfg) {
    validate_config(cfg);
    auto [r_s, r_c] = radii_from_fractions(cfg.f_s, cfg.f_c, cfg.n_s, cfg.n_c, cfg.aspect);
    const int n_s = cfg.f_s > 0 ? cfg.n_s : 0;
    const int n_c = cfg.f_c > 0 ? cfg.n_c : 0;

    SplitMix64 rng(cfg.seed);
    Population pop;
    pop.sample.params = {cfg.f_s, cfg.f_c, n_s, n_c, cfg.aspect};
    pop.sample.seed = cfg.seed;
    pop.sample.provenance = Provenance::RSA;
    pop.sample.strategy = to_string(cfg.strategy);

    RsaResult result;
    std::vector<double> reach_buf;
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    RsaConfig order_cfg = cfg;
    order_cfg.n_s = n_s;
    order_cfg.n_c = n_c;
    long total_attempts = 0;
    constexpr long kClockStride = 512;

    for (bool want_cylinder : build_order(order_cfg)) {
        long attempts = 0;
        while (true) {
            ++attempts;
            ++total_attempts;
            bool placed = false;
            if (want_cylinder) {
                CylinderInc cand;
                cand.center = rng.point_in_unit_cube();
                cand.radius = r_c;
                cand.half_axis = rng.unit_vector() * (cfg.aspect * r_c);
                if (!conflicts(cand, pop, reach_buf)) {
                    pop.push(cand);
                    placed = true;
                } else if (cfg.record_rejections && result.rejections.size() < 20000) {
                    result.rejections.push_back({true, {}, cand, pop.sample.n_spheres(),
                                                 pop.sample.n_cylinders()});
                }
            } else {
                SphereInc cand;
                cand.center = rng.point_in_unit_cube();
                cand.radius = r_s;
                if (!conflicts(cand, pop, reach_buf)) {
                    pop.push(cand);
                    placed = true;
                } else if (cfg.record_rejections && result.rejections.size() < 20000) {
                    result.rejections.push_back({false, cand, {}, pop.sample.n_spheres(),
                                                 pop.sample.n_cylinders()});
                }
            }
            if (placed) break;

            const bool over_attempts = attempts >= cfg.max_attempts_per_object;
            const bool check_clock = over_attempts || (attempts % kClockStride == 0);
            if (check_clock && (over_attempts || elapsed() > cfg.time_budget_s)) {
                result.stagnation = StagnationInfo{pop.sample.n_spheres(),
                                                   pop.sample.n_cylinders(), total_attempts,
                                                   elapsed()};
                return result;
            }
        }
    }

    result.sample = std::move(pop.sample);
    return result;
}

} // namespace rvegen
