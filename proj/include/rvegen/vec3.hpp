#pragma once
// Minimal 3D vector math shared by every module. Double precision only.

#include <cmath>

namespace rvegen {

// A vector is treated as null below this norm (lengths are in cube-edge
// units, so this is far below any meaningful geometric scale).
inline constexpr double kNullEps = 1e-10;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& v) const { return {x + v.x, y + v.y, z + v.z}; }
    constexpr Vec3 operator-(const Vec3& v) const { return {x - v.x, y - v.y, z - v.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }

    Vec3& operator+=(const Vec3& v) { x += v.x; y += v.y; z += v.z; return *this; }
    Vec3& operator-=(const Vec3& v) { x -= v.x; y -= v.y; z -= v.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    constexpr bool operator==(const Vec3& v) const { return x == v.x && y == v.y && z == v.z; }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline constexpr double dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline constexpr double norm2(const Vec3& v) { return dot(v, v); }

inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }

inline bool is_null(const Vec3& v) { return norm(v) < kNullEps; }

// Returns the zero vector when ||v|| < kNullEps; callers that need a
// direction in that case must supply their own fallback.
inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n < kNullEps) return {0.0, 0.0, 0.0};
    return v / n;
}

inline bool all_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Some unit vector orthogonal to v (deterministic choice).
inline Vec3 any_orthogonal(const Vec3& v) {
    Vec3 u = (std::fabs(v.x) <= std::fabs(v.y) && std::fabs(v.x) <= std::fabs(v.z))
                 ? Vec3{1, 0, 0}
                 : (std::fabs(v.y) <= std::fabs(v.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    return normalized(cross(v, u));
}

} // namespace rvegen
