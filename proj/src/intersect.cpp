#include "rvegen/intersect.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "rvegen/simd/kernels.hpp"

namespace rvegen {

const char* to_string(ContactKind k) {
    switch (k) {
        case ContactKind::SS: return "ss";
        case ContactKind::SC1: return "sc1";
        case ContactKind::SC2: return "sc2";
        case ContactKind::SC3: return "sc3";
        case ContactKind::SC4: return "sc4";
        case ContactKind::CC1: return "cc1";
        case ContactKind::CD1: return "cd1";
        case ContactKind::CD2: return "cd2";
        case ContactKind::CD3: return "cd3";
        case ContactKind::D1: return "d1";
        case ContactKind::D2: return "d2";
    }
    return "?";
}

std::optional<Contact> sphere_sphere(const SphereInc& s1, const SphereInc& s2) {
    double d = norm(s1.center - s2.center);
    if (d >= s1.radius + s2.radius) return std::nullopt;
    Contact ct;
    ct.kind = ContactKind::SS;
    ct.dist = d;
    return ct;
}

std::optional<Contact> sphere_cylinder(const SphereInc& s, const CylinderInc& c) {
    const double hl = c.half_length();
    const Vec3 dir = c.half_axis / hl;
    const Vec3 d = s.center - c.center;
    const double X = dot(d, dir);
    const double aX = std::fabs(X);

    if (aX > hl + s.radius) {
        // Sphere far beyond a cap along the axis. The containment test below
        // cannot fire in exact arithmetic (|X| <= ||d|| always); kept for
        // parity with the classification table.
        if (norm(d) < s.radius) {
            Contact ct;
            ct.kind = ContactKind::SC1;
            ct.X = X;
            return ct;
        }
        return std::nullopt;
    }

    const double L = std::sqrt(std::max(norm2(d) - X * X, 0.0));

    if (aX < hl) {
        if (L < s.radius + c.radius) {
            Contact ct;
            ct.kind = ContactKind::SC2;
            ct.X = X;
            ct.L = L;
            return ct;
        }
        return std::nullopt;
    }

    // Cap band: hl <= |X| <= hl + r_s.
    const double cap = std::sqrt(std::max(s.radius * s.radius - (aX - hl) * (aX - hl), 0.0));
    if (L < cap + c.radius) {
        Contact ct;
        ct.kind = L < c.radius ? ContactKind::SC3 : ContactKind::SC4;
        ct.X = X;
        ct.L = L;
        return ct;
    }
    return std::nullopt;
}

std::optional<Contact> disk_disk(const Disk& d1, const Disk& d2) {
    const Vec3 n = cross(d1.normal, d2.normal);
    if (norm(n) < kNullEps) return std::nullopt; // parallel planes: rim cases live elsewhere

    const Vec3 ndir = n / norm(n);

    // Foot of the first center on the plane-intersection line. The sign of t
    // is fixed by requiring the foot to lie in both planes.
    const Vec3 v = cross(n, d1.normal);
    const double denom = dot(v, d2.normal); // equals ||n||^2, nonzero here
    const double t = dot(d2.center - d1.center, d2.normal) / denom;
    const Vec3 foot1 = d1.center + t * v;

    // Two disks meet exactly when their chords on the common line overlap;
    // testing a single point of the line under-reports shallow contacts.
    const double dist1 = norm(foot1 - d1.center);
    if (dist1 >= d1.radius) return std::nullopt;
    const Vec3 foot2 = foot1 + dot(d2.center - foot1, ndir) * ndir;
    const double dist2 = norm(foot2 - d2.center);
    if (dist2 >= d2.radius) return std::nullopt;

    const double h1 = std::sqrt(d1.radius * d1.radius - dist1 * dist1);
    const double h2 = std::sqrt(d2.radius * d2.radius - dist2 * dist2);
    const double s2 = dot(foot2 - foot1, ndir);
    const double lo = std::max(-h1, s2 - h2);
    const double hi = std::min(h1, s2 + h2);
    if (hi <= lo) return std::nullopt;

    const double mid = 0.5 * (lo + hi);
    const Vec3 pt = foot1 + mid * ndir;
    const double e1 = norm(pt - d1.center);
    const double e2 = norm(pt - d2.center);

    Contact ct;
    ct.kind = (d1.radius * d1.radius - e1 * e1 > d2.radius * d2.radius - e2 * e2)
                  ? ContactKind::D1
                  : ContactKind::D2;
    ct.t = mid;
    ct.pt1 = pt;
    return ct;
}

namespace {

// Roots of a real polynomial of degree <= 4 by Durand-Kerner iteration.
// Returned values are approximate; callers use them only as evaluation
// candidates, so accuracy beyond a few ulps is not required.
int poly_roots_real(const double* coef, int degree, double* out) {
    while (degree > 0 && std::fabs(coef[degree]) < 1e-14) --degree;
    if (degree <= 0) return 0;

    std::complex<double> z[4], c[5];
    for (int i = 0; i <= degree; ++i) c[i] = coef[i] / coef[degree];
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> p = 1.0;
    for (int i = 0; i < degree; ++i) {
        z[i] = p;
        p *= seed;
    }
    for (int iter = 0; iter < 64; ++iter) {
        double moved = 0.0;
        for (int i = 0; i < degree; ++i) {
            std::complex<double> num = c[degree];
            for (int k = degree - 1; k >= 0; --k) num = num * z[i] + c[k];
            std::complex<double> den = 1.0;
            for (int j = 0; j < degree; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) < 1e-30) continue;
            std::complex<double> step = num / den;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-13) break;
    }
    int n = 0;
    for (int i = 0; i < degree; ++i)
        if (std::fabs(z[i].imag()) < 1e-6) out[n++] = z[i].real();
    return n;
}

// Where the disk rim comes closest to the cylinder axis, constrained to the
// axial band |axial| <= half-length. Exact up to root-finding residuals,
// which only perturb the evaluation grid, not the minimum value (second
// order at a critical point).
struct RimWitness {
    bool feasible = false; // some rim point lies in the axial band
    double axial = 0.0;    // axis abscissa of the best rim point
    double radial2 = 0.0;  // its squared distance to the axis
    Vec3 point;            // the rim point itself
};

RimWitness rim_closest_to_axis(const CylinderInc& cyl, const Disk& d) {
    const double hl = cyl.half_length();
    const Vec3 ldir = cyl.half_axis / hl;
    const Vec3 e1 = any_orthogonal(d.normal);
    const Vec3 e2 = cross(d.normal, e1);
    const Vec3 w = d.center - cyl.center;

    const double a0 = dot(w, ldir);
    const double a1 = d.radius * dot(e1, ldir);
    const double a2 = d.radius * dot(e2, ldir);
    const double b1 = dot(w, e1);
    const double b2 = dot(w, e2);
    const double base = norm2(w) + d.radius * d.radius;

    // radial^2(phi) = base + 2 r_d (b1 cos + b2 sin) - axial(phi)^2 as a
    // second-order trigonometric polynomial.
    const double C1 = 2.0 * (d.radius * b1 - a0 * a1);
    const double S1 = 2.0 * (d.radius * b2 - a0 * a2);
    const double C2 = 0.5 * (a2 * a2 - a1 * a1);
    const double S2 = -a1 * a2;

    double cand[20];
    int n_cand = 0;
    // Stationary points of radial^2 via tan(phi/2) substitution.
    {
        const double q[5] = {S1 + 2.0 * S2, -2.0 * C1 - 8.0 * C2, -12.0 * S2,
                             8.0 * C2 - 2.0 * C1, 2.0 * S2 - S1};
        double roots[4];
        int n = poly_roots_real(q, 4, roots);
        for (int i = 0; i < n; ++i) cand[n_cand++] = 2.0 * std::atan(roots[i]);
    }
    // Band boundary crossings: axial(phi) = +-hl.
    {
        const double amp = std::hypot(a1, a2);
        if (amp > 0.0) {
            const double psi = std::atan2(a2, a1);
            for (double side : {hl, -hl}) {
                const double u = (side - a0) / amp;
                if (std::fabs(u) <= 1.0) {
                    const double ac = std::acos(u);
                    cand[n_cand++] = psi + ac;
                    cand[n_cand++] = psi - ac;
                }
            }
        }
    }
    // Fixed fallbacks cover flat or fully degenerate profiles.
    cand[n_cand++] = 0.0;
    cand[n_cand++] = 0.5 * M_PI;
    cand[n_cand++] = M_PI;
    cand[n_cand++] = 1.5 * M_PI;

    RimWitness best;
    for (int i = 0; i < n_cand; ++i) {
        const double cphi = std::cos(cand[i]);
        const double sphi = std::sin(cand[i]);
        const double axial = a0 + a1 * cphi + a2 * sphi;
        if (std::fabs(axial) > hl) continue;
        const double r2 = std::max(
            base + 2.0 * d.radius * (b1 * cphi + b2 * sphi) - axial * axial, 0.0);
        if (!best.feasible || r2 < best.radial2) {
            best.feasible = true;
            best.radial2 = r2;
            best.axial = axial;
            best.point = d.center + d.radius * (cphi * e1 + sphi * e2);
        }
    }
    return best;
}

} // namespace

std::optional<Contact> cylinder_disk(const CylinderInc& c, const Disk& d) {
    const double hl = c.half_length();
    const Vec3 dir = c.half_axis / hl;

    // Pierce point of the axis line through the disk plane (absent when the
    // plane is parallel to the axis). ta is in half-axis units.
    const double along = dot(d.normal, c.half_axis);
    const bool has_pierce = std::fabs(along) >= kNullEps * hl;
    double ta = 0.0;
    Vec3 a{};
    double dist_a = std::numeric_limits<double>::infinity();
    if (has_pierce) {
        ta = dot(d.normal, d.center - c.center) / along;
        a = c.center + ta * c.half_axis;
        dist_a = norm(d.center - a);
    }

    const RimWitness rim = rim_closest_to_axis(c, d);
    const bool rim_hit = rim.feasible && rim.radial2 < c.radius * c.radius;

    auto fill = [&](ContactKind kind) {
        Contact ct;
        ct.kind = kind;
        ct.X = rim_hit ? rim.axial : std::clamp(dot(d.center - c.center, dir), -hl, hl);
        ct.pt1 = has_pierce ? a : d.center;
        if (rim_hit) {
            ct.pt2 = rim.point;
            ct.pt3 = c.center + rim.axial * dir;
        } else {
            ct.pt2 = d.center;
            ct.pt3 = c.center + ct.X * dir;
        }
        return ct;
    };

    if (has_pierce && dist_a < d.radius) {
        // The disk crosses the axis line in-plane: either the rim reaches
        // the curved face, or the body is threaded through the disk.
        if (rim_hit) return fill(ContactKind::CD2);
        if (std::fabs(ta) < 1.0) return fill(ContactKind::CD3);
        return std::nullopt;
    }
    if (rim_hit) return fill(ContactKind::CD1);
    return std::nullopt;
}

namespace {

// Parallel axes: overlap holds exactly when the axial intervals overlap and
// the inter-axis distance is below the radius sum. Reported as CC1 with the
// feet placed at the midpoint of the axial overlap, so ||pt1 - pt2|| equals
// the inter-axis distance.
std::optional<Contact> cylinder_cylinder_parallel(const CylinderInc& c1,
                                                  const CylinderInc& c2) {
    const double h1 = c1.half_length();
    const double h2 = c2.half_length();
    const Vec3 dir = c1.half_axis / h1;

    const Vec3 delta = c2.center - c1.center;
    const double s2 = dot(delta, dir);
    const Vec3 radial = delta - s2 * dir;
    const double rho = norm(radial);
    if (rho >= c1.radius + c2.radius) return std::nullopt;

    const double lo = std::max(-h1, s2 - h2);
    const double hi = std::min(h1, s2 + h2);
    if (hi <= lo) return std::nullopt;

    const double mid = 0.5 * (lo + hi);
    Contact ct;
    ct.kind = ContactKind::CC1;
    ct.rho = rho;
    ct.t1 = mid / h1;
    ct.t2 = (mid - s2) / h2;
    ct.pt1 = c1.center + mid * dir;
    ct.pt2 = c1.center + mid * dir + radial;
    return ct;
}

struct BasePair {
    Disk disk;
    int label; // +1: base at center + half_axis, -1: the opposite one
};

std::array<BasePair, 2> labeled_bases(const CylinderInc& c) {
    auto [top, bottom] = cylinder_bases(c);
    return {BasePair{top, +1}, BasePair{bottom, -1}};
}

} // namespace

std::vector<Contact> cylinder_cylinder(const CylinderInc& c1, const CylinderInc& c2) {
    std::vector<Contact> out;

    const Vec3 cr = cross(c1.half_axis, c2.half_axis);
    const double sin_angle = norm(cr) / (c1.half_length() * c2.half_length());
    if (sin_angle < kNullEps) {
        if (auto ct = cylinder_cylinder_parallel(c1, c2)) out.push_back(*ct);
        return out;
    }

    const Vec3 n = cr / norm(cr);
    const double rho = std::fabs(dot(c1.center - c2.center, n));
    if (rho >= c1.radius + c2.radius) return out;

    const Vec3 n1 = cross(n, c1.half_axis);
    const Vec3 n2 = cross(n, c2.half_axis);
    const double t1 = dot(c2.center - c1.center, n2) / dot(c1.half_axis, n2);
    const double t2 = dot(c1.center - c2.center, n1) / dot(c2.half_axis, n1);

    if (std::fabs(t1) <= 1.0 && std::fabs(t2) <= 1.0) {
        Contact ct;
        ct.kind = ContactKind::CC1;
        ct.rho = rho;
        ct.t1 = t1;
        ct.t2 = t2;
        ct.pt1 = c1.center + t1 * c1.half_axis;
        ct.pt2 = c2.center + t2 * c2.half_axis;
        out.push_back(ct);
        return out;
    }

    // Base phase: every disk-mediated contact is collected because the force
    // model needs all simultaneous contacts.
    for (const auto& bp : labeled_bases(c2)) {
        if (auto ct = cylinder_disk(c1, bp.disk)) {
            ct->disk_a = 0;
            ct->disk_b = bp.label;
            out.push_back(*ct);
        }
    }
    for (const auto& bp : labeled_bases(c1)) {
        if (auto ct = cylinder_disk(c2, bp.disk)) {
            ct->disk_a = bp.label; // the disk side is participant A here
            ct->disk_b = 0;
            out.push_back(*ct);
        }
    }
    for (const auto& b1 : labeled_bases(c1)) {
        for (const auto& b2 : labeled_bases(c2)) {
            if (auto ct = disk_disk(b1.disk, b2.disk)) {
                ct->disk_a = b1.label;
                ct->disk_b = b2.label;
                out.push_back(*ct);
            }
        }
    }
    return out;
}

bool any_intersection(const SphereInc& a, const SphereInc& b) {
    double rr = a.radius + b.radius;
    return norm2(a.center - b.center) < rr * rr;
}

bool any_intersection(const SphereInc& s, const CylinderInc& c) {
    return sphere_cylinder(s, c).has_value();
}

bool any_intersection(const CylinderInc& c1, const CylinderInc& c2) {
    const Vec3 cr = cross(c1.half_axis, c2.half_axis);
    const double sin_angle = norm(cr) / (c1.half_length() * c2.half_length());
    if (sin_angle < kNullEps) return cylinder_cylinder_parallel(c1, c2).has_value();

    const Vec3 n = cr / norm(cr);
    const double rho = std::fabs(dot(c1.center - c2.center, n));
    if (rho >= c1.radius + c2.radius) return false;

    const Vec3 n1 = cross(n, c1.half_axis);
    const Vec3 n2 = cross(n, c2.half_axis);
    const double t1 = dot(c2.center - c1.center, n2) / dot(c1.half_axis, n2);
    const double t2 = dot(c1.center - c2.center, n1) / dot(c2.half_axis, n1);
    if (std::fabs(t1) <= 1.0 && std::fabs(t2) <= 1.0) return true;

    for (const auto& bp : labeled_bases(c2))
        if (cylinder_disk(c1, bp.disk)) return true;
    for (const auto& bp : labeled_bases(c1))
        if (cylinder_disk(c2, bp.disk)) return true;
    for (const auto& b1 : labeled_bases(c1))
        for (const auto& b2 : labeled_bases(c2))
            if (disk_disk(b1.disk, b2.disk)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Monte-Carlo overlap oracle

namespace {

struct Aabb {
    Vec3 lo, hi;
    double volume() const {
        return (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
    }
};

Aabb bounding_box(const SphereInc& s) {
    Vec3 r{s.radius, s.radius, s.radius};
    return {s.center - r, s.center + r};
}

Aabb bounding_box(const CylinderInc& c) {
    // Extent along axis k: hl*|dir_k| + r*sqrt(1 - dir_k^2).
    const Vec3 dir = c.axis_dir();
    const double hl = c.half_length();
    auto ext = [&](double dk) {
        return hl * std::fabs(dk) + c.radius * std::sqrt(std::max(1.0 - dk * dk, 0.0));
    };
    Vec3 e{ext(dir.x), ext(dir.y), ext(dir.z)};
    return {c.center - e, c.center + e};
}

void membership(const SphereInc& s, const double* px, const double* py, const double* pz,
                std::size_t n, std::uint8_t* out) {
    kernels::active().point_in_sphere(px, py, pz, n, s.center.x, s.center.y, s.center.z,
                                      s.radius, false, out);
}

void membership(const CylinderInc& c, const double* px, const double* py, const double* pz,
                std::size_t n, std::uint8_t* out) {
    const Vec3 dir = c.axis_dir();
    kernels::active().point_in_cylinder(px, py, pz, n, c.center.x, c.center.y, c.center.z,
                                        dir.x, dir.y, dir.z, c.half_length(), c.radius,
                                        false, out);
}

} // namespace

template <class ShapeA, class ShapeB>
OverlapEstimate overlap_oracle(const ShapeA& a, const ShapeB& b, long n_samples,
                               std::uint64_t seed) {
    const Aabb box = bounding_box(a);
    SplitMix64 rng(seed);

    constexpr std::size_t kBatch = 4096;
    std::vector<double> px(kBatch), py(kBatch), pz(kBatch);
    std::vector<std::uint8_t> in_a(kBatch), in_b(kBatch);

    long hits = 0;
    long remaining = n_samples;
    while (remaining > 0) {
        std::size_t m = std::min<long>(remaining, kBatch);
        for (std::size_t i = 0; i < m; ++i) {
            px[i] = rng.uniform(box.lo.x, box.hi.x);
            py[i] = rng.uniform(box.lo.y, box.hi.y);
            pz[i] = rng.uniform(box.lo.z, box.hi.z);
        }
        membership(a, px.data(), py.data(), pz.data(), m, in_a.data());
        membership(b, px.data(), py.data(), pz.data(), m, in_b.data());
        for (std::size_t i = 0; i < m; ++i) hits += in_a[i] & in_b[i];
        remaining -= m;
    }

    const double vol_box = box.volume();
    const double p = double(hits) / double(n_samples);
    OverlapEstimate est;
    est.volume = vol_box * p;
    est.std_error = vol_box * std::sqrt(std::max(p * (1.0 - p), 0.0) / double(n_samples));
    return est;
}

template OverlapEstimate overlap_oracle(const SphereInc&, const SphereInc&, long, std::uint64_t);
template OverlapEstimate overlap_oracle(const SphereInc&, const CylinderInc&, long, std::uint64_t);
template OverlapEstimate overlap_oracle(const CylinderInc&, const SphereInc&, long, std::uint64_t);
template OverlapEstimate overlap_oracle(const CylinderInc&, const CylinderInc&, long, std::uint64_t);

} // namespace rvegen
