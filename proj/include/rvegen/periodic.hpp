#pragma once
// Unit-cube periodicity: canonical wrapping, boundary-crossing attributes,
// and periodic contact enumeration for pairs and whole samples.
//
// Image bookkeeping relies on inclusions being self-valid (no overlap with
// their own images), which bounds the per-axis reach by half the edge; the
// 3x3x3 shift neighborhood is then exhaustive. Self-image contacts of a
// single inclusion are enumerated over half the shifts so each unordered
// image pair is counted once.

#include <vector>

#include "rvegen/contact.hpp"
#include "rvegen/intersect.hpp"
#include "rvegen/sample.hpp"

namespace rvegen {

// Component-wise wrap into [0, 1).
inline double wrap01(double x) {
    double w = x - std::floor(x);
    return w < 1.0 ? w : 0.0;
}
inline Vec3 wrap01(const Vec3& p) { return {wrap01(p.x), wrap01(p.y), wrap01(p.z)}; }

// Nearest-image displacement for unit edge.
inline double min_image(double d) { return d - std::nearbyint(d); }
inline Vec3 min_image(const Vec3& d) { return {min_image(d.x), min_image(d.y), min_image(d.z)}; }

struct BoundaryAttr {
    // Lattice translations under which the inclusion's bounding sphere
    // still overlaps the unit cell; always contains (0,0,0).
    std::vector<Vec3> shifts;
};

// Conservative bounding-sphere attribute: a superset costs retries, never
// correctness.
BoundaryAttr boundary_attr(const Vec3& center, double bounding_radius);

inline BoundaryAttr boundary_attr(const SphereInc& s) {
    return boundary_attr(s.center, bounding_radius(s));
}
inline BoundaryAttr boundary_attr(const CylinderInc& c) {
    return boundary_attr(c.center, bounding_radius(c));
}

// All contacts between a and the periodic images of b (including b itself).
// Contacts carry the image shift that produced them.
std::vector<Contact> periodic_contacts(const SphereInc& a, const SphereInc& b);
std::vector<Contact> periodic_contacts(const SphereInc& a, const CylinderInc& b);
std::vector<Contact> periodic_contacts(const CylinderInc& a, const CylinderInc& b);

// Contacts of an inclusion with its own images (each image pair once).
std::vector<Contact> self_image_contacts(const SphereInc& s);
std::vector<Contact> self_image_contacts(const CylinderInc& c);

// Boolean fast paths for generation sweeps.
bool periodic_any(const SphereInc& a, const SphereInc& b);
bool periodic_any(const SphereInc& a, const CylinderInc& b);
bool periodic_any(const CylinderInc& a, const CylinderInc& b);
bool self_image_any(const SphereInc& s);
bool self_image_any(const CylinderInc& c);

// Full O(n^2) periodic sweep over a sample, global participant indices
// filled in. Deterministic order: ascending (i, j), self-images last.
std::vector<Contact> all_contacts(const RveSample& sample);

// True when the sample has at least one periodic contact (early exit).
bool has_any_contact(const RveSample& sample);

} // namespace rvegen
