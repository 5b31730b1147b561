#pragma once

#include <cmath>

namespace cm {

/// Plain 2-D vector with value semantics. Units are carried by context
/// (meters for positions, meters/second for velocities).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }
    constexpr bool operator==(const Vec2& o) const = default;

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    /// Scalar 2-D cross product.
    constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    constexpr double squared_norm() const { return x * x + y * y; }
    double norm() const { return std::sqrt(squared_norm()); }
    /// Zero vector stays zero.
    Vec2 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{};
    }
    /// 90 degrees counterclockwise.
    constexpr Vec2 perp() const { return {-y, x}; }
    Vec2 rotated(double angle) const {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        return {c * x - s * y, s * x + c * y};
    }
    double angle() const { return std::atan2(y, x); }
};

inline constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Signed angle from a to b, in (-pi, pi].
inline double signed_angle(const Vec2& a, const Vec2& b) {
    return std::atan2(a.cross(b), a.dot(b));
}

}  // namespace cm
