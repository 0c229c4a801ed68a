// AVX2 backend: four doubles per lane group, same operation order as the
// scalar reference (no FMA), so results are bitwise identical. Compiled with
// -mavx2 -ffp-contract=off; only reached behind the runtime CPU check in the
// dispatcher. VROUNDPD with _MM_FROUND_TO_NEAREST_INT matches nearbyint
// under the default round-to-nearest-even mode, which this project never
// changes.

#include "rvegen/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace rvegen::kernels {

namespace {

inline __m256d wrap_mi4(__m256d d) {
    __m256d r = _mm256_round_pd(d, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    return _mm256_sub_pd(d, r);
}

inline __m256d abs4(__m256d v) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    return _mm256_and_pd(v, mask);
}

inline void store_mask(std::uint8_t* out, __m256d cmp) {
    int m = _mm256_movemask_pd(cmp);
    out[0] = m & 1;
    out[1] = (m >> 1) & 1;
    out[2] = (m >> 2) & 1;
    out[3] = (m >> 3) & 1;
}

inline double wrap_mi(double d) { return d - std::nearbyint(d); }

void sphere_membership_avx2(const double* px, const double* py, const double* pz,
                            std::size_t n, double cx, double cy, double cz,
                            double radius, bool periodic, std::uint8_t* out) {
    const double r2 = radius * radius;
    const __m256d cxv = _mm256_set1_pd(cx);
    const __m256d cyv = _mm256_set1_pd(cy);
    const __m256d czv = _mm256_set1_pd(cz);
    const __m256d r2v = _mm256_set1_pd(r2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i), cxv);
        __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i), cyv);
        __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pz + i), czv);
        if (periodic) {
            dx = wrap_mi4(dx);
            dy = wrap_mi4(dy);
            dz = wrap_mi4(dz);
        }
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        store_mask(out + i, _mm256_cmp_pd(d2, r2v, _CMP_LE_OQ));
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

void cylinder_membership_avx2(const double* px, const double* py, const double* pz,
                              std::size_t n, double cx, double cy, double cz,
                              double ax, double ay, double az, double half_len,
                              double radius, bool periodic, std::uint8_t* out) {
    const double r2 = radius * radius;
    const __m256d cxv = _mm256_set1_pd(cx);
    const __m256d cyv = _mm256_set1_pd(cy);
    const __m256d czv = _mm256_set1_pd(cz);
    const __m256d axv = _mm256_set1_pd(ax);
    const __m256d ayv = _mm256_set1_pd(ay);
    const __m256d azv = _mm256_set1_pd(az);
    const __m256d hlv = _mm256_set1_pd(half_len);
    const __m256d r2v = _mm256_set1_pd(r2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i), cxv);
        __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i), cyv);
        __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(pz + i), czv);
        if (periodic) {
            dx = wrap_mi4(dx);
            dy = wrap_mi4(dy);
            dz = wrap_mi4(dz);
        }
        __m256d axial = _mm256_add_pd(
            _mm256_add_pd(_mm256_mul_pd(dx, axv), _mm256_mul_pd(dy, ayv)),
            _mm256_mul_pd(dz, azv));
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        __m256d rad2 = _mm256_sub_pd(d2, _mm256_mul_pd(axial, axial));
        __m256d in_band = _mm256_cmp_pd(abs4(axial), hlv, _CMP_LE_OQ);
        __m256d in_rad = _mm256_cmp_pd(rad2, r2v, _CMP_LE_OQ);
        store_mask(out + i, _mm256_and_pd(in_band, in_rad));
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

void center_prefilter_avx2(const double* xs, const double* ys, const double* zs,
                           const double* reach, std::size_t n,
                           double cx, double cy, double cz, std::uint8_t* out) {
    const __m256d cxv = _mm256_set1_pd(cx);
    const __m256d cyv = _mm256_set1_pd(cy);
    const __m256d czv = _mm256_set1_pd(cz);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = wrap_mi4(_mm256_sub_pd(_mm256_loadu_pd(xs + i), cxv));
        __m256d dy = wrap_mi4(_mm256_sub_pd(_mm256_loadu_pd(ys + i), cyv));
        __m256d dz = wrap_mi4(_mm256_sub_pd(_mm256_loadu_pd(zs + i), czv));
        __m256d d2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                   _mm256_mul_pd(dz, dz));
        __m256d rv = _mm256_loadu_pd(reach + i);
        __m256d r2 = _mm256_mul_pd(rv, rv);
        store_mask(out + i, _mm256_cmp_pd(d2, r2, _CMP_LT_OQ));
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

const Backend* avx2_backend() {
    if (!__builtin_cpu_supports("avx2")) return nullptr;
    static const Backend b{sphere_membership_avx2, cylinder_membership_avx2,
                           center_prefilter_avx2, "avx2"};
    return &b;
}

} // namespace rvegen::kernels

#else

namespace rvegen::kernels {
const Backend* avx2_backend() { return nullptr; }
} // namespace rvegen::kernels

#endif
