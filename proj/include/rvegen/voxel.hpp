#pragma once
// Rendering a sample into a dense periodic material grid, plus the
// Monte-Carlo volume measurements used to validate predicates and the
// energy stop criterion.

#include <cstdint>
#include <string>
#include <vector>

#include "rvegen/intersect.hpp"
#include "rvegen/sample.hpp"

namespace rvegen {

// Material ids.
inline constexpr std::uint8_t kPhaseMatrix = 0;
inline constexpr std::uint8_t kPhaseSphere = 1;
inline constexpr std::uint8_t kPhaseCylinder = 2;

const char* phase_name(std::uint8_t id);

struct VoxelGrid {
    int resolution = 0;
    std::vector<std::uint8_t> data; // x-fastest ordering

    std::uint8_t& at(int ix, int iy, int iz) {
        return data[(std::size_t(iz) * resolution + iy) * resolution + ix];
    }
    std::uint8_t at(int ix, int iy, int iz) const {
        return data[(std::size_t(iz) * resolution + iy) * resolution + ix];
    }
};

// Closed-boundary membership; periodic uses the nearest image.
bool point_in(const SphereInc& s, const Vec3& p, bool periodic);
bool point_in(const CylinderInc& c, const Vec3& p, bool periodic);

// Voxel ids from voxel-center membership, cylinders overriding spheres on
// the (normally impossible) double claim.
VoxelGrid voxelize(const RveSample& sample, int resolution);

double volume_fraction(const VoxelGrid& grid, std::uint8_t phase);

// Monte-Carlo estimate of the summed pairwise intersection volume under
// periodic images, self-image overlaps included (covering images counted
// with multiplicity).
OverlapEstimate total_overlap_mc(const RveSample& sample, long n_points, std::uint64_t seed);

// RAW voxel file (resolution^3 bytes, x-fastest) plus a JSON sidecar header.
void write_raw_with_sidecar(const VoxelGrid& grid, const RveSample& sample,
                            const std::string& raw_path);

} // namespace rvegen
