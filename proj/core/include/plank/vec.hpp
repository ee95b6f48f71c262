#pragma once

#include <array>
#include <cmath>

namespace plank {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline constexpr double norm2(Vec2 a) { return dot(a, a); }
/// CCW rotation by pi/2.
inline constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 unit(Vec2 a) { double n = norm(a); return {a.x / n, a.y / n}; }
inline Vec2 dir_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double angle_of(Vec2 a) { return std::atan2(a.y, a.x); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(Vec3 r) const { return {x + r.x, y + r.y, z + r.z}; }
    constexpr Vec3 operator-(Vec3 r) const { return {x - r.x, y - r.y, z - r.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    friend constexpr Vec3 operator*(double s, Vec3 v) { return {v.x * s, v.y * s, v.z * s}; }
    constexpr bool operator==(const Vec3&) const = default;
};

inline constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline constexpr double norm2(Vec3 a) { return dot(a, a); }
inline Vec3 unit(Vec3 a) { double n = norm(a); return {a.x / n, a.y / n, a.z / n}; }

/// Strict lexicographic order, used for deterministic tie-breaking.
inline constexpr bool lex_less(Vec2 a, Vec2 b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}
inline constexpr bool lex_less(Vec3 a, Vec3 b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

/// Row-major 2x2 rotation matrix.
struct Mat2 {
    std::array<double, 4> m{1, 0, 0, 1};

    static Mat2 rotation(double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        return {{c, -s, s, c}};
    }
    Vec2 operator*(Vec2 v) const { return {m[0] * v.x + m[1] * v.y, m[2] * v.x + m[3] * v.y}; }
    Mat2 transposed() const { return {{m[0], m[2], m[1], m[3]}}; }
};

/// Row-major 3x3 rotation matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 operator*(Vec3 v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    Mat3 transposed() const { return {{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}}; }

    /// Rodrigues rotation taking unit vector `from` onto unit vector `to`.
    static Mat3 rotation_between(Vec3 from, Vec3 to);
};

inline Mat3 Mat3::rotation_between(Vec3 from, Vec3 to) {
    Vec3 a = cross(from, to);
    double s = norm(a);
    double c = dot(from, to);
    if (s < 1e-14) {
        if (c > 0) return Mat3{};
        // Antipodal: pick any axis orthogonal to `from`.
        Vec3 axis = std::abs(from.x) < 0.9 ? cross(from, Vec3{1, 0, 0}) : cross(from, Vec3{0, 1, 0});
        axis = unit(axis);
        // Rotation by pi about `axis`: R = 2*axis*axis^T - I.
        Mat3 r;
        r.m = {2 * axis.x * axis.x - 1, 2 * axis.x * axis.y, 2 * axis.x * axis.z,
               2 * axis.y * axis.x, 2 * axis.y * axis.y - 1, 2 * axis.y * axis.z,
               2 * axis.z * axis.x, 2 * axis.z * axis.y, 2 * axis.z * axis.z - 1};
        return r;
    }
    Vec3 k = a / s;
    double t = 1 - c;
    Mat3 r;
    r.m = {c + k.x * k.x * t, k.x * k.y * t - k.z * s, k.x * k.z * t + k.y * s,
           k.y * k.x * t + k.z * s, c + k.y * k.y * t, k.y * k.z * t - k.x * s,
           k.z * k.x * t - k.y * s, k.z * k.y * t + k.x * s, c + k.z * k.z * t};
    return r;
}

}  // namespace plank
