#pragma once
// Deterministic RNG used by every stochastic component.
//
// SplitMix64 (Steele, Lea, Flood 2014): a fixed, documented algorithm so a
// (seed, stream) pair reproduces the same sequence on any platform. Streams
// derived from the same seed are independent enough for this workload.

#include <cmath>
#include <cstdint>

#include "rvegen/vec3.hpp"

namespace rvegen {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    SplitMix64(std::uint64_t seed, std::uint64_t stream)
        : state_(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1))) {
        next_u64(); // decorrelate trivially related (seed, stream) pairs
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Marsaglia polar method; one spare value is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Uniform on the unit sphere via a normalized Gaussian triple.
    Vec3 unit_vector() {
        while (true) {
            Vec3 g{gaussian(), gaussian(), gaussian()};
            double n = norm(g);
            if (n > kNullEps) return g / n;
        }
    }

    Vec3 point_in_unit_cube() { return {uniform01(), uniform01(), uniform01()}; }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace rvegen
