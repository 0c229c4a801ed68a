#pragma once
// Data-parallel inner-loop kernels with runtime backend selection.
//
// Three batched kernels carry the hot arithmetic of the whole project:
//   - point-in-sphere / point-in-cylinder membership over point batches
//     (Monte-Carlo overlap oracle, voxelizer),
//   - minimum-image center distance prefilter of one candidate against a
//     population (RSA rejection sweeps, MD broad phase).
//
// Every backend implements the same operation sequence with no FMA
// contraction, so masks and distances agree bitwise between the scalar
// reference and the vector variants; results never depend on which backend
// the dispatcher picked. The scalar kernels are the reference semantics;
// equivalence is enforced by tests/test_simd_kernels.cpp.
//
// Periodic wrapping uses round-half-to-even (nearbyint / VROUNDPD), valid
// whenever the shape's per-axis reach is below half the cell edge.

#include <cstddef>
#include <cstdint>

namespace rvegen::kernels {

// out[i] = 1 iff point i is inside the sphere (closed boundary).
using SphereMembershipFn = void (*)(const double* px, const double* py, const double* pz,
                                    std::size_t n, double cx, double cy, double cz,
                                    double radius, bool periodic, std::uint8_t* out);

// out[i] = 1 iff point i is inside the cylinder (closed boundary).
// (ax,ay,az) is the unit axis direction, half_len the half-length.
using CylinderMembershipFn = void (*)(const double* px, const double* py, const double* pz,
                                      std::size_t n, double cx, double cy, double cz,
                                      double ax, double ay, double az, double half_len,
                                      double radius, bool periodic, std::uint8_t* out);

// out[i] = 1 iff the minimum-image distance between (cx,cy,cz) and point i
// is strictly below reach[i]. Used as an exact superset filter: the
// minimum-image distance never exceeds the distance to any specific image.
using CenterPrefilterFn = void (*)(const double* xs, const double* ys, const double* zs,
                                   const double* reach, std::size_t n,
                                   double cx, double cy, double cz, std::uint8_t* out);

struct Backend {
    SphereMembershipFn point_in_sphere = nullptr;
    CylinderMembershipFn point_in_cylinder = nullptr;
    CenterPrefilterFn center_prefilter = nullptr;
    const char* name = "";
};

// Backend picked at first use: AVX2 on x86-64 when the CPU has it, NEON on
// aarch64, otherwise the scalar reference.
const Backend& active();

const Backend& scalar_backend();
const Backend* avx2_backend(); // nullptr when unsupported at runtime
const Backend* neon_backend(); // nullptr off aarch64

// Overrides the dispatcher ("scalar", "avx2", "neon", "auto"). Returns false
// if the requested backend is unavailable. Intended for tests and the CLI.
bool select_backend(const char* name);

} // namespace rvegen::kernels
