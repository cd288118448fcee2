#pragma once

// Numeric straightedge-and-compass primitives. The canonical construction
// frame puts A at the origin, AB along +x and AD along +y.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "conics/errors.hpp"

namespace conics {

struct Tolerance {
    double eps_rel = 1e-9;
    double eps_abs = 1e-12;

    // |a - b| <= max(eps_abs, eps_rel * max(|a|, |b|))
    [[nodiscard]] bool equal(double a, double b) const noexcept {
        return std::abs(a - b) <= std::max(eps_abs, eps_rel * std::max(std::abs(a), std::abs(b)));
    }

    // |value| is negligible compared to a quantity of magnitude `scale`.
    [[nodiscard]] bool negligible(double value, double scale) const noexcept {
        return std::abs(value) <= std::max(eps_abs, eps_rel * std::abs(scale));
    }

    [[nodiscard]] bool valid() const noexcept { return eps_rel > 0.0 && eps_abs > 0.0; }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    std::optional<std::string> label;

    Point() = default;
    Point(double px, double py) : x(px), y(py) {}
    Point(double px, double py, std::string name) : x(px), y(py), label(std::move(name)) {}

    [[nodiscard]] bool finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }

    [[nodiscard]] Point named(std::string name) const { return {x, y, std::move(name)}; }

    // Coordinates only; labels do not take part in equality.
    friend bool operator==(const Point& a, const Point& b) noexcept { return a.x == b.x && a.y == b.y; }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    [[nodiscard]] double norm() const noexcept { return std::hypot(x, y); }
    [[nodiscard]] Vec2 rotated_ccw() const noexcept { return {-y, x}; }
};

inline Vec2 operator-(const Point& a, const Point& b) noexcept { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(const Point& p, const Vec2& v) noexcept { return {p.x + v.x, p.y + v.y}; }
inline Vec2 operator*(double s, const Vec2& v) noexcept { return {s * v.x, s * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) noexcept { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) noexcept { return a.x * b.y - a.y * b.x; }

struct Circle {
    Point center;
    double radius = 1.0;

    Circle(Point c, double r) : center(std::move(c)), radius(r) {
        if (!(r > 0.0) || !std::isfinite(r)) {
            throw DomainError("circle radius must be positive and finite");
        }
    }
};

// Infinite line through `anchor`; `direction` is kept at unit length.
class Line {
public:
    Line(Point anchor, Vec2 direction) : anchor_(std::move(anchor)) {
        const double n = direction.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw DegenerateRay("line direction must be a nonzero finite vector");
        }
        direction_ = {direction.x / n, direction.y / n};
    }

    static Line through(const Point& from, const Point& to) {
        if (from == to) {
            throw DegenerateRay("line through two coincident points");
        }
        return {from, to - from};
    }

    [[nodiscard]] const Point& anchor() const noexcept { return anchor_; }
    [[nodiscard]] const Vec2& direction() const noexcept { return direction_; }

    [[nodiscard]] Point at(double t) const noexcept { return anchor_ + t * direction_; }

    [[nodiscard]] double distance_to(const Point& p) const noexcept {
        return std::abs(cross(direction_, p - anchor_));
    }

private:
    Point anchor_;
    Vec2 direction_;
};

inline double distance(const Point& p, const Point& q) noexcept { return std::hypot(q.x - p.x, q.y - p.y); }

// Euclid I.10.
inline Point midpoint(const Point& p, const Point& q) noexcept {
    return {0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
}

// Point at distance `dist` beyond `through` on the ray from `from` through `through`.
inline Point extend_along_ray(const Point& through, const Point& from, double dist) {
    if (through == from) {
        throw DegenerateRay("extend_along_ray: `through` and `from` coincide");
    }
    if (!(dist > 0.0) || !std::isfinite(dist)) {
        throw DomainError("extend_along_ray: distance must be positive");
    }
    const Vec2 d = through - from;
    const double n = d.norm();
    return {through.x + dist * (d.x / n), through.y + dist * (d.y / n)};
}

// Point at distance `dist` from `origin` towards `toward` (Euclid I.3).
inline Point mark_along_ray(const Point& origin, const Point& toward, double dist) {
    if (origin == toward) {
        throw DegenerateRay("mark_along_ray: `origin` and `toward` coincide");
    }
    if (!(dist > 0.0) || !std::isfinite(dist)) {
        throw DomainError("mark_along_ray: distance must be positive");
    }
    const Vec2 d = toward - origin;
    const double n = d.norm();
    return {origin.x + dist * (d.x / n), origin.y + dist * (d.y / n)};
}

// The perpendicular through `at`, directed a quarter turn counter-clockwise
// from the base direction (I.11).
inline Line erect_perpendicular(const Point& at, const Line& base, const Tolerance& tol = {}) {
    const double scale = std::max({1.0, std::abs(at.x), std::abs(at.y), std::abs(base.anchor().x),
                                   std::abs(base.anchor().y)});
    if (!tol.negligible(base.distance_to(at), scale)) {
        throw PreconditionError("erect_perpendicular: point does not lie on the base line");
    }
    return {at, base.direction().rotated_ccw()};
}

// Intersections sorted by ascending y, then ascending x. A tangent line yields
// a single point.
inline std::vector<Point> intersect_circle_line(const Circle& c, const Line& l, const Tolerance& tol = {}) {
    const Vec2 u = l.direction();
    const double t = dot(c.center - l.anchor(), u);
    const Point foot = l.at(t);
    const double d = distance(foot, c.center);
    const double r = c.radius;

    if (tol.equal(d, r)) {
        return {foot};
    }
    if (d > r) {
        return {};
    }
    // (r - d)(r + d) avoids cancellation in r^2 - d^2 when d is close to r.
    const double h = std::sqrt((r - d) * (r + d));
    std::vector<Point> out{foot + (-h) * u, foot + h * u};
    std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    return out;
}

} // namespace conics
