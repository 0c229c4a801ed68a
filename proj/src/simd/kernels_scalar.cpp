// Scalar reference kernels. This translation unit is compiled with
// -ffp-contract=off so the operation sequence below is exactly what runs;
// the vector backends replicate it lane by lane.

#include <cmath>

#include "rvegen/simd/kernels.hpp"

namespace rvegen::kernels {

namespace {

inline double wrap_mi(double d) { return d - std::nearbyint(d); }

void sphere_membership_scalar(const double* px, const double* py, const double* pz,
                              std::size_t n, double cx, double cy, double cz,
                              double radius, bool periodic, std::uint8_t* out) {
    const double r2 = radius * radius;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = px[i] - cx;
        double dy = py[i] - cy;
        double dz = pz[i] - cz;
        if (periodic) {
            dx = wrap_mi(dx);
            dy = wrap_mi(dy);
            dz = wrap_mi(dz);
        }
        double d2 = dx * dx + dy * dy + dz * dz;
        out[i] = d2 <= r2 ? 1 : 0;
    }
}

void cylinder_membership_scalar(const double* px, const double* py, const double* pz,
                                std::size_t n, double cx, double cy, double cz,
                                double ax, double ay, double az, double half_len,
                                double radius, bool periodic, std::uint8_t* out) {
    const double r2 = radius * radius;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = px[i] - cx;
        double dy = py[i] - cy;
        double dz = pz[i] - cz;
        if (periodic) {
            dx = wrap_mi(dx);
            dy = wrap_mi(dy);
            dz = wrap_mi(dz);
        }
        double axial = dx * ax + dy * ay + dz * az;
        double d2 = dx * dx + dy * dy + dz * dz;
        double rad2 = d2 - axial * axial;
        out[i] = (std::fabs(axial) <= half_len && rad2 <= r2) ? 1 : 0;
    }
}

void center_prefilter_scalar(const double* xs, const double* ys, const double* zs,
                             const double* reach, std::size_t n,
                             double cx, double cy, double cz, std::uint8_t* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double dx = wrap_mi(xs[i] - cx);
        double dy = wrap_mi(ys[i] - cy);
        double dz = wrap_mi(zs[i] - cz);
        double d2 = dx * dx + dy * dy + dz * dz;
        out[i] = d2 < reach[i] * reach[i] ? 1 : 0;
    }
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{sphere_membership_scalar, cylinder_membership_scalar,
                           center_prefilter_scalar, "scalar"};
    return b;
}

} // namespace rvegen::kernels
