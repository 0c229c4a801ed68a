#pragma once
// Inclusion primitives: spheres, flat-capped cylinders, base disks.
//
// A cylinder is stored as center + half_axis: the half_axis direction is the
// symmetry axis and its norm is half the cylinder length, so the aspect
// ratio (length over diameter) is ||half_axis|| / radius.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "rvegen/vec3.hpp"

namespace rvegen {

struct SphereInc {
    Vec3 center;
    double radius = 0.0;
};

struct CylinderInc {
    Vec3 center;
    double radius = 0.0;
    Vec3 half_axis;

    double half_length() const { return norm(half_axis); }
    Vec3 axis_dir() const { return normalized(half_axis); }
    double aspect_ratio() const { return half_length() / radius; }
};

// Flat disk, used for cylinder bases. normal is unit length.
struct Disk {
    Vec3 center;
    double radius = 0.0;
    Vec3 normal;
};

inline void validate(const SphereInc& s) {
    if (!all_finite(s.center) || !std::isfinite(s.radius))
        throw std::invalid_argument("sphere: non-finite field");
    if (s.radius <= 0.0) throw std::invalid_argument("sphere: radius must be > 0");
    if (2.0 * s.radius >= 1.0)
        throw std::invalid_argument("sphere: diameter must be smaller than the cell edge");
}

inline void validate(const CylinderInc& c) {
    if (!all_finite(c.center) || !all_finite(c.half_axis) || !std::isfinite(c.radius))
        throw std::invalid_argument("cylinder: non-finite field");
    if (c.radius <= 0.0) throw std::invalid_argument("cylinder: radius must be > 0");
    double hl = c.half_length();
    if (hl <= 0.0) throw std::invalid_argument("cylinder: half_axis must be non-null");
    if (2.0 * hl >= 1.0)
        throw std::invalid_argument("cylinder: length must be smaller than the cell edge");
    if (!std::isfinite(hl / c.radius))
        throw std::invalid_argument("cylinder: aspect ratio must be finite");
}

// Base disks at center +/- half_axis with outward unit normals.
inline std::pair<Disk, Disk> cylinder_bases(const CylinderInc& c) {
    Vec3 dir = c.axis_dir();
    Disk top{c.center + c.half_axis, c.radius, dir};
    Disk bottom{c.center - c.half_axis, c.radius, -dir};
    return {top, bottom};
}

// Radius of the smallest sphere containing the inclusion, centered at it.
inline double bounding_radius(const SphereInc& s) { return s.radius; }
inline double bounding_radius(const CylinderInc& c) {
    return std::sqrt(c.radius * c.radius + norm2(c.half_axis));
}

inline double volume(const SphereInc& s) {
    return 4.0 / 3.0 * M_PI * s.radius * s.radius * s.radius;
}
inline double volume(const CylinderInc& c) {
    return M_PI * c.radius * c.radius * 2.0 * c.half_length();
}

} // namespace rvegen
