#pragma once
// Exact-algebraic intersection detection and classification for all shape
// pairs. Tangency counts as no contact: every penetration test is a strict
// inequality, so a relaxed configuration has identically zero contacts.

#include <optional>
#include <vector>

#include "rvegen/contact.hpp"
#include "rvegen/rng.hpp"
#include "rvegen/shapes.hpp"

namespace rvegen {

std::optional<Contact> sphere_sphere(const SphereInc& s1, const SphereInc& s2);

// Branch order: sphere far beyond the caps along the axis; sphere against
// the curved face; sphere in the cap band. X and L are recorded.
std::optional<Contact> sphere_cylinder(const SphereInc& s, const CylinderInc& c);

// Foot point of the plane-intersection line, then radius tests on both
// disks. Parallel planes (normals within kNullEps of collinear) never
// produce a disk-disk contact here; those configurations are handled by the
// callers' other checks.
std::optional<Contact> disk_disk(const Disk& d1, const Disk& d2);

// Disk against the curved face / axis of a cylinder. Disk-rim against the
// cylinder's own bases is out of scope here (see disk_disk). Handles the
// degenerate disk-plane-parallel-to-axis case with an in-plane overlap test.
std::optional<Contact> cylinder_disk(const CylinderInc& c, const Disk& d);

// Full cylinder pair classification. Returns every simultaneous contact:
// either a single CC1, or the collected cylinder-disk and disk-disk contacts
// of the base phase. disk_a/disk_b tag base involvement for force mapping.
std::vector<Contact> cylinder_cylinder(const CylinderInc& c1, const CylinderInc& c2);

// Boolean-only fast paths (stop at the first hit).
bool any_intersection(const SphereInc& a, const SphereInc& b);
bool any_intersection(const SphereInc& s, const CylinderInc& c);
bool any_intersection(const CylinderInc& c1, const CylinderInc& c2);

struct OverlapEstimate {
    double volume = 0.0; // Monte-Carlo estimate of vol(a intersect b)
    double std_error = 0.0;
};

// Independent Monte-Carlo oracle: samples the axis-aligned bounding box of
// shape A and counts points inside both shapes. Shares no code with the
// predicates above.
template <class ShapeA, class ShapeB>
OverlapEstimate overlap_oracle(const ShapeA& a, const ShapeB& b, long n_samples,
                               std::uint64_t seed);

} // namespace rvegen
