// NEON backend (aarch64): two doubles per lane group, same operation order
// as the scalar reference. vrndnq_f64 rounds half to even, matching
// nearbyint. Compiled with -ffp-contract=off.

#include "rvegen/simd/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace rvegen::kernels {

namespace {

inline float64x2_t wrap_mi2(float64x2_t d) { return vsubq_f64(d, vrndnq_f64(d)); }

inline double wrap_mi(double d) { return d - std::nearbyint(d); }

inline void store_mask(std::uint8_t* out, uint64x2_t m) {
    out[0] = vgetq_lane_u64(m, 0) ? 1 : 0;
    out[1] = vgetq_lane_u64(m, 1) ? 1 : 0;
}

void sphere_membership_neon(const double* px, const double* py, const double* pz,
                            std::size_t n, double cx, double cy, double cz,
                            double radius, bool periodic, std::uint8_t* out) {
    const double r2 = radius * radius;
    const float64x2_t cxv = vdupq_n_f64(cx);
    const float64x2_t cyv = vdupq_n_f64(cy);
    const float64x2_t czv = vdupq_n_f64(cz);
    const float64x2_t r2v = vdupq_n_f64(r2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t dx = vsubq_f64(vld1q_f64(px + i), cxv);
        float64x2_t dy = vsubq_f64(vld1q_f64(py + i), cyv);
        float64x2_t dz = vsubq_f64(vld1q_f64(pz + i), czv);
        if (periodic) {
            dx = wrap_mi2(dx);
            dy = wrap_mi2(dy);
            dz = wrap_mi2(dz);
        }
        float64x2_t d2 = vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)),
                                   vmulq_f64(dz, dz));
        store_mask(out + i, vcleq_f64(d2, r2v));
    }
    for (; i < n; ++i) {
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

void cylinder_membership_neon(const double* px, const double* py, const double* pz,
                              std::size_t n, double cx, double cy, double cz,
                              double ax, double ay, double az, double half_len,
                              double radius, bool periodic, std::uint8_t* out) {
    const double r2 = radius * radius;
    const float64x2_t cxv = vdupq_n_f64(cx);
    const float64x2_t cyv = vdupq_n_f64(cy);
    const float64x2_t czv = vdupq_n_f64(cz);
    const float64x2_t axv = vdupq_n_f64(ax);
    const float64x2_t ayv = vdupq_n_f64(ay);
    const float64x2_t azv = vdupq_n_f64(az);
    const float64x2_t hlv = vdupq_n_f64(half_len);
    const float64x2_t r2v = vdupq_n_f64(r2);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t dx = vsubq_f64(vld1q_f64(px + i), cxv);
        float64x2_t dy = vsubq_f64(vld1q_f64(py + i), cyv);
        float64x2_t dz = vsubq_f64(vld1q_f64(pz + i), czv);
        if (periodic) {
            dx = wrap_mi2(dx);
            dy = wrap_mi2(dy);
            dz = wrap_mi2(dz);
        }
        float64x2_t axial = vaddq_f64(vaddq_f64(vmulq_f64(dx, axv), vmulq_f64(dy, ayv)),
                                      vmulq_f64(dz, azv));
        float64x2_t d2 = vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)),
                                   vmulq_f64(dz, dz));
        float64x2_t rad2 = vsubq_f64(d2, vmulq_f64(axial, axial));
        uint64x2_t in_band = vcleq_f64(vabsq_f64(axial), hlv);
        uint64x2_t in_rad = vcleq_f64(rad2, r2v);
        store_mask(out + i, vandq_u64(in_band, in_rad));
    }
    for (; i < n; ++i) {
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

void center_prefilter_neon(const double* xs, const double* ys, const double* zs,
                           const double* reach, std::size_t n,
                           double cx, double cy, double cz, std::uint8_t* out) {
    const float64x2_t cxv = vdupq_n_f64(cx);
    const float64x2_t cyv = vdupq_n_f64(cy);
    const float64x2_t czv = vdupq_n_f64(cz);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t dx = wrap_mi2(vsubq_f64(vld1q_f64(xs + i), cxv));
        float64x2_t dy = wrap_mi2(vsubq_f64(vld1q_f64(ys + i), cyv));
        float64x2_t dz = wrap_mi2(vsubq_f64(vld1q_f64(zs + i), czv));
        float64x2_t d2 = vaddq_f64(vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)),
                                   vmulq_f64(dz, dz));
        float64x2_t rv = vld1q_f64(reach + i);
        store_mask(out + i, vcltq_f64(d2, vmulq_f64(rv, rv)));
    }
    for (; i < n; ++i) {
        double dx = wrap_mi(xs[i] - cx);
        double dy = wrap_mi(ys[i] - cy);
        double dz = wrap_mi(zs[i] - cz);
        double d2 = dx * dx + dy * dy + dz * dz;
        out[i] = d2 < reach[i] * reach[i] ? 1 : 0;
    }
}

} // namespace

const Backend* neon_backend() {
    static const Backend b{sphere_membership_neon, cylinder_membership_neon,
                           center_prefilter_neon, "neon"};
    return &b;
}

} // namespace rvegen::kernels

#else

namespace rvegen::kernels {
const Backend* neon_backend() { return nullptr; }
} // namespace rvegen::kernels

#endif
