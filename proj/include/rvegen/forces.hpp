#pragma once
// Linear-elastic repulsive contact forces: one row per contact kind, acting
// on a designated participant with the reaction applied at the same point.
// Degenerate directions (coincident centers, crossing axes) are drawn from
// the caller's RNG so relaxation is not biased toward any fixed direction.

#include <vector>

#include "rvegen/contact.hpp"
#include "rvegen/rng.hpp"
#include "rvegen/sample.hpp"

namespace rvegen {

// A resolved contact participant; for disk-mediated contacts the owning
// cylinder is stored and the base label lives in the Contact.
struct Body {
    bool is_cyl = false;
    SphereInc sph;
    CylinderInc cyl;

    static Body sphere(const SphereInc& s) { return Body{false, s, {}}; }
    static Body cylinder(const CylinderInc& c) { return Body{true, {}, c}; }
    const Vec3& center() const { return is_cyl ? cyl.center : sph.center; }
};

struct AppliedForce {
    Vec3 force;
    Vec3 point;
    int object = 0;
};

// One action-reaction pair, expressed as the force on participant A; the
// force on B is the exact negation at the same point.
struct ContactForce {
    Vec3 force_on_a;
    Vec3 point;
};

struct ForceSet {
    std::vector<AppliedForce> entries; // both members of every pair
    double potential_energy = 0.0;     // sum of ||F||^2, one term per pair
};

// Per-inclusion aggregates over a contact list.
struct SystemForces {
    std::vector<Vec3> force;  // sum of forces per inclusion
    std::vector<Vec3> torque; // sum of (p_j - center) x F_j (cylinders use it)
    double potential_energy = 0.0;
};

// Participant B must already carry the image shift of the contact. Throws
// std::logic_error on a malformed contact (missing scalar for its kind).
ContactForce force_for_contact(const Contact& ct, const Body& a, const Body& b,
                               SplitMix64& rng);

// Sums per-inclusion forces and torques over a full contact list in
// deterministic order. Self-image contacts contribute zero net force but a
// real torque. Optionally records every applied force.
SystemForces accumulate(const RveSample& sample, const std::vector<Contact>& contacts,
                        SplitMix64& rng, ForceSet* detail = nullptr);

} // namespace rvegen
