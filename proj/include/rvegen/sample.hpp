#pragma once
// The periodic unit-cube sample: inclusion lists plus generation metadata.

#include <cstdint>
#include <string>
#include <vector>

#include "rvegen/shapes.hpp"

namespace rvegen {

enum class Provenance { RSA, MD };

inline const char* to_string(Provenance p) { return p == Provenance::RSA ? "RSA" : "MD"; }

// Echo of the generation request (volume fractions, counts, aspect ratio).
struct GenParams {
    double f_s = 0.0;
    double f_c = 0.0;
    int n_s = 0;
    int n_c = 0;
    double aspect = 3.0;
};

struct RveSample {
    std::vector<SphereInc> spheres;
    std::vector<CylinderInc> cylinders;
    GenParams params;
    std::uint64_t seed = 0;
    Provenance provenance = Provenance::RSA;
    std::string strategy; // RSA ordering strategy, empty for MD

    int n_spheres() const { return int(spheres.size()); }
    int n_cylinders() const { return int(cylinders.size()); }
    int size() const { return n_spheres() + n_cylinders(); }

    // Global indexing: spheres first, then cylinders.
    bool is_cylinder(int i) const { return i >= n_spheres(); }
    const Vec3& center(int i) const {
        return is_cylinder(i) ? cylinders[i - n_spheres()].center : spheres[i].center;
    }
    Vec3& center(int i) {
        return is_cylinder(i) ? cylinders[i - n_spheres()].center : spheres[i].center;
    }
    double bounding_radius_of(int i) const {
        return is_cylinder(i) ? bounding_radius(cylinders[i - n_spheres()])
                              : bounding_radius(spheres[i]);
    }
};

} // namespace rvegen
