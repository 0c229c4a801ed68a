#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "rvegen/rng.hpp"
#include "rvegen/simd/kernels.hpp"

using namespace rvegen;

namespace {

struct PointBatch {
    std::vector<double> x, y, z;
};

PointBatch random_points(std::size_t n, std::uint64_t seed, double lo, double hi) {
    SplitMix64 rng(seed);
    PointBatch b;
    b.x.resize(n);
    b.y.resize(n);
    b.z.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        b.x[i] = rng.uniform(lo, hi);
        b.y[i] = rng.uniform(lo, hi);
        b.z[i] = rng.uniform(lo, hi);
    }
    return b;
}

} // namespace

TEST_CASE("vector backends agree bitwise with the scalar reference") {
    const kernels::Backend& ref = kernels::scalar_backend();
    std::vector<const kernels::Backend*> others;
    if (const auto* b = kernels::avx2_backend()) others.push_back(b);
    if (const auto* b = kernels::neon_backend()) others.push_back(b);
    if (others.empty()) {
        MESSAGE("no vector backend on this host; scalar only");
        return;
    }

    // Odd length exercises the remainder lanes.
    const std::size_t n = 4097;
    SplitMix64 rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        PointBatch pts = random_points(n, 1000 + rep, -1.5, 2.5);
        const double cx = rng.uniform(0, 1), cy = rng.uniform(0, 1), cz = rng.uniform(0, 1);
        const double radius = rng.uniform(0.01, 0.45);
        Vec3 dir = rng.unit_vector();
        const double hl = rng.uniform(0.02, 0.45);

        std::vector<double> reach(n);
        for (std::size_t i = 0; i < n; ++i) reach[i] = rng.uniform(0.0, 0.8);

        for (bool periodic : {false, true}) {
            std::vector<std::uint8_t> m_ref(n), m_other(n);
            ref.point_in_sphere(pts.x.data(), pts.y.data(), pts.z.data(), n, cx, cy, cz,
                                radius, periodic, m_ref.data());
            for (const auto* b : others) {
                b->point_in_sphere(pts.x.data(), pts.y.data(), pts.z.data(), n, cx, cy, cz,
                                   radius, periodic, m_other.data());
                CHECK(m_ref == m_other);
            }

            ref.point_in_cylinder(pts.x.data(), pts.y.data(), pts.z.data(), n, cx, cy, cz,
                                  dir.x, dir.y, dir.z, hl, radius, periodic, m_ref.data());
            for (const auto* b : others) {
                b->point_in_cylinder(pts.x.data(), pts.y.data(), pts.z.data(), n, cx, cy, cz,
                                     dir.x, dir.y, dir.z, hl, radius, periodic,
                                     m_other.data());
                CHECK(m_ref == m_other);
            }
        }

        std::vector<std::uint8_t> m_ref(n), m_other(n);
        ref.center_prefilter(pts.x.data(), pts.y.data(), pts.z.data(), reach.data(), n, cx,
                             cy, cz, m_ref.data());
        for (const auto* b : others) {
            b->center_prefilter(pts.x.data(), pts.y.data(), pts.z.data(), reach.data(), n,
                                cx, cy, cz, m_other.data());
            CHECK(m_ref == m_other);
        }
    }
}

TEST_CASE("membership semantics: closed boundaries and wrapping") {
    const kernels::Backend& k = kernels::active();
    // A point exactly on the sphere surface is inside (coordinates chosen
    // dyadic so the boundary is exact in floating point).
    double px = 0.75, py = 0.5, pz = 0.5;
    std::uint8_t out = 0;
    k.point_in_sphere(&px, &py, &pz, 1, 0.5, 0.5, 0.5, 0.25, false, &out);
    CHECK(out == 1);
    // Cylinder cap-edge point is inside (closed boundary).
    px = 0.25;
    py = 0.0;
    pz = 0.5;
    k.point_in_cylinder(&px, &py, &pz, 1, 0, 0, 0, 0, 0, 1, 0.5, 0.25, false, &out);
    CHECK(out == 1);
    // Periodic wrap: a point near 1 is close to a center near 0.
    px = 0.98;
    py = 0.5;
    pz = 0.5;
    k.point_in_sphere(&px, &py, &pz, 1, 0.01, 0.5, 0.5, 0.05, true, &out);
    CHECK(out == 1);
    k.point_in_sphere(&px, &py, &pz, 1, 0.01, 0.5, 0.5, 0.05, false, &out);
    CHECK(out == 0);
}

TEST_CASE("backend selection") {
    CHECK(kernels::select_backend("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK(kernels::select_backend("auto"));
    CHECK_FALSE(kernels::select_backend("not-a-backend"));
}
