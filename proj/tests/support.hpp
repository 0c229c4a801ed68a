#pragma once
// Shared test helpers: random shape-pair generation spanning every contact
// kind regime, and a predicate dispatcher for mixed pairs.

#include <optional>
#include <vector>

#include "rvegen/intersect.hpp"
#include "rvegen/rng.hpp"
#include "rvegen/shapes.hpp"

namespace rvegen::testsupport {

struct ShapePair {
    bool a_cyl = false;
    bool b_cyl = false;
    SphereInc sa, sb;
    CylinderInc ca, cb;
};

// Pairs are placed so that center distance sweeps through the touching
// range: a mix of clear hits, clear misses, and near-tangent cases.
inline ShapePair random_pair(SplitMix64& rng) {
    ShapePair p;
    const double pick = rng.uniform01();
    p.a_cyl = pick >= 0.6;
    p.b_cyl = pick >= 0.3;

    auto rand_sphere = [&](SphereInc& s) {
        s.center = {0, 0, 0};
        s.radius = rng.uniform(0.05, 0.3);
        return bounding_radius(s);
    };
    auto rand_cylinder = [&](CylinderInc& c) {
        c.center = {0, 0, 0};
        c.radius = rng.uniform(0.03, 0.2);
        const double aspect = rng.uniform(0.8, 6.0);
        c.half_axis = rng.unit_vector() * (aspect * c.radius);
        if (2.0 * norm(c.half_axis) >= 0.98) c.half_axis *= 0.98 / (2.0 * norm(c.half_axis));
        return bounding_radius(c);
    };

    double ra = p.a_cyl ? rand_cylinder(p.ca) : rand_sphere(p.sa);
    double rb = p.b_cyl ? rand_cylinder(p.cb) : rand_sphere(p.sb);

    // Occasionally force near-degenerate axis alignments.
    if (p.a_cyl && p.b_cyl) {
        const double mode = rng.uniform01();
        if (mode < 0.15) { // near parallel
            Vec3 dir = normalized(p.ca.half_axis);
            Vec3 tilt = rng.unit_vector() * rng.uniform(0.0, 1e-3);
            p.cb.half_axis = normalized(dir + tilt) * norm(p.cb.half_axis);
        } else if (mode < 0.3) { // near perpendicular
            Vec3 dir = normalized(p.ca.half_axis);
            Vec3 perp = normalized(cross(dir, rng.unit_vector()));
            Vec3 tilt = rng.unit_vector() * rng.uniform(0.0, 1e-3);
            p.cb.half_axis = normalized(perp + tilt) * norm(p.cb.half_axis);
        }
    }

    const Vec3 offset = rng.unit_vector() * ((ra + rb) * rng.uniform(0.0, 1.2));
    if (p.b_cyl)
        p.cb.center = offset;
    else
        p.sb.center = offset;
    return p;
}

inline bool predicate_reports_contact(const ShapePair& p) {
    if (!p.a_cyl && !p.b_cyl) return sphere_sphere(p.sa, p.sb).has_value();
    if (!p.a_cyl && p.b_cyl) return sphere_cylinder(p.sa, p.cb).has_value();
    if (p.a_cyl && !p.b_cyl) return sphere_cylinder(p.sb, p.ca).has_value();
    return !cylinder_cylinder(p.ca, p.cb).empty();
}

inline OverlapEstimate oracle_for_pair(const ShapePair& p, long n, std::uint64_t seed) {
    if (!p.a_cyl && !p.b_cyl) return overlap_oracle(p.sa, p.sb, n, seed);
    if (!p.a_cyl && p.b_cyl) return overlap_oracle(p.sa, p.cb, n, seed);
    if (p.a_cyl && !p.b_cyl) return overlap_oracle(p.ca, p.sb, n, seed);
    return overlap_oracle(p.ca, p.cb, n, seed);
}

} // namespace rvegen::testsupport
