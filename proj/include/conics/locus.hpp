#pragma once

// Loci of the corner J as the applied height y varies:
//   parabola   x^2 = L y
//   ellipse    x^2 = L y - lambda y^2
//   hyperbola  x^2 = L y + lambda y^2
// Points come from running the constructions; the closed forms here are
// used for parameters and for checking.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conics/constructions.hpp"
#include "conics/errors.hpp"
#include "conics/format.hpp"
#include "conics/geom_kernel.hpp"

namespace conics {

enum class ConicKind { Parabola, Ellipse, Hyperbola };
enum class Branch { Upper, Lower };
enum class MajorAxis { AlongAD, ParallelToAB };

inline std::string_view to_string(ConicKind k) noexcept {
    switch (k) {
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Hyperbola: return "hyperbola";
    }
    return "parabola";
}

inline std::string_view to_string(Branch b) noexcept { return b == Branch::Upper ? "Upper" : "Lower"; }
inline std::string_view to_string(MajorAxis a) noexcept {
    return a == MajorAxis::AlongAD ? "AD" : "parallel-AB";
}

inline ApplicationKind application_kind(ConicKind k) noexcept {
    switch (k) {
    case ConicKind::Parabola: return ApplicationKind::Exact;
    case ConicKind::Ellipse: return ApplicationKind::Deficient;
    case ConicKind::Hyperbola: return ApplicationKind::Excess;
    }
    return ApplicationKind::Exact;
}

struct LocusPoint {
    double x = 0.0;  // AI = AG
    double y = 0.0;  // AD
    Branch branch = Branch::Upper;

    friend bool operator==(const LocusPoint&, const LocusPoint&) = default;
};

struct SampleRange {
    double y_min = 0.0;
    double y_max = 1.0;
    int n = 2;
};

struct ConicSpec {
    ConicKind kind = ConicKind::Parabola;
    double base_L = 1.0;
    std::optional<double> lambda;
    std::optional<double> coefficient;  // parabola y = coefficient * x^2
    std::optional<Point> center;
    std::optional<double> semi_axis_x;
    std::optional<double> semi_axis_y;
    std::optional<MajorAxis> major_axis;  // ellipse only
    std::vector<Point> vertices;
    std::optional<double> eccentricity;
    std::optional<std::pair<double, double>> asymptote_slopes;
    std::optional<double> conjugate_axis_y;
};

struct AreaBound {
    double area = 0.0;
    double at_base = 0.0;
};

namespace detail {

inline void check_conic_args(ConicKind kind, double L, std::optional<double> lambda) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("base L must be positive, got " + format_number(L));
    }
    if (kind == ConicKind::Parabola) {
        if (lambda) throw DomainError("parabola takes no lambda");
        return;
    }
    if (!lambda) throw DomainError(std::string(to_string(kind)) + " requires lambda");
    if (!(*lambda > 0.0) || !std::isfinite(*lambda)) {
        throw DomainError("lambda must be positive, got " + format_number(*lambda));
    }
}

inline double sign_of_lambda_term(ConicKind kind) noexcept {
    switch (kind) {
    case ConicKind::Parabola: return 0.0;
    case ConicKind::Ellipse: return -1.0;
    case ConicKind::Hyperbola: return 1.0;
    }
    return 0.0;
}

} // namespace detail

// Eq. (4) bound: the deficient application of largest area sits on half of AB.
inline AreaBound max_applicable_area(double L, double lambda) {
    detail::check_conic_args(ConicKind::Ellipse, L, lambda);
    return {L * L / (4.0 * lambda), L / 2.0};
}

// J for each height, read off the construction. Height 0 (and L/lambda for
// the ellipse) is the zero-area application, whose corner J is the vertex
// on AD. Hyperbola output lists the Upper branch, then the Lower branch
// obtained by reflecting across the conjugate axis y = -L/(2 lambda).
inline std::vector<LocusPoint> sample_locus_at(ConicKind kind, double L, std::optional<double> lambda,
                                               std::span<const double> heights, const Tolerance& tol = {}) {
    detail::check_conic_args(kind, L, lambda);
    const double y_top = kind == ConicKind::Ellipse ? L / *lambda : 0.0;
    std::vector<double> ys(heights.begin(), heights.end());
    std::sort(ys.begin(), ys.end());

    std::vector<LocusPoint> out;
    out.reserve(kind == ConicKind::Hyperbola ? 2 * ys.size() : ys.size());
    for (double y : ys) {
        if (!(y >= 0.0) || !std::isfinite(y)) {
            throw DomainError("locus height must be nonnegative, got " + format_number(y));
        }
        if (kind == ConicKind::Ellipse && y > y_top && !tol.equal(y, y_top)) {
            throw DomainError("ellipse height " + format_number(y) + " exceeds L/lambda = " + format_number(y_top));
        }
        if (y == 0.0) {
            out.push_back({0.0, 0.0, Branch::Upper});
            continue;
        }
        if (kind == ConicKind::Ellipse && tol.equal(y, y_top)) {
            out.push_back({0.0, y_top, Branch::Upper});
            continue;
        }
        const auto r = apply({application_kind(kind), L, lambda, y});
        out.push_back({r.J.x, r.J.y, Branch::Upper});
    }
    if (kind == ConicKind::Hyperbola) {
        const double far_vertex = -L / *lambda;
        const std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back({out[i].x, far_vertex - out[i].y, Branch::Lower});
        }
    }
    return out;
}

inline std::vector<LocusPoint> sample_locus(ConicKind kind, double L, std::optional<double> lambda,
                                            const SampleRange& range, const Tolerance& tol = {}) {
    detail::check_conic_args(kind, L, lambda);
    if (range.n < 2) throw DomainError("sample count must be at least 2");
    if (!(range.y_min >= 0.0) || !(range.y_min < range.y_max) || !std::isfinite(range.y_max)) {
        throw DomainError("sample range must satisfy 0 <= y_min < y_max");
    }
    if (kind == ConicKind::Ellipse) {
        const double y_top = L / *lambda;
        if (range.y_max > y_top && !tol.equal(range.y_max, y_top)) {
            throw DomainError("ellipse range exceeds L/lambda = " + format_number(y_top));
        }
    }
    std::vector<double> heights(static_cast<std::size_t>(range.n));
    const double step = (range.y_max - range.y_min) / (range.n - 1);
    for (int i = 0; i < range.n; ++i) {
        heights[static_cast<std::size_t>(i)] = range.y_min + i * step;
    }
    heights.back() = range.y_max;
    return sample_locus_at(kind, L, lambda, heights, tol);
}

// Appends the images J'(-x, y); points on the axis are not duplicated.
inline std::vector<LocusPoint> mirror(std::span<const LocusPoint> points) {
    std::vector<LocusPoint> out(points.begin(), points.end());
    for (const auto& p : points) {
        if (p.x != 0.0) out.push_back({-p.x, p.y, p.branch});
    }
    return out;
}

inline ConicSpec conic_params(ConicKind kind, double L, std::optional<double> lambda) {
    detail::check_conic_args(kind, L, lambda);
    ConicSpec s;
    s.kind = kind;
    s.base_L = L;
    s.lambda = lambda;
    if (kind == ConicKind::Parabola) {
        s.coefficient = 1.0 / L;
        s.vertices = {Point{0.0, 0.0, "A"}};
        return s;
    }

    const double lam = *lambda;
    const double half_y = L / (2.0 * lam);            // along AD
    const double half_x = L / (2.0 * std::sqrt(lam));  // parallel to AB
    s.semi_axis_x = half_x;
    s.semi_axis_y = half_y;

    if (kind == ConicKind::Ellipse) {
        s.center = Point{0.0, half_y};
        s.major_axis = lam <= 1.0 ? MajorAxis::AlongAD : MajorAxis::ParallelToAB;
        s.eccentricity = lam <= 1.0 ? std::sqrt(1.0 - lam) : std::sqrt(1.0 - 1.0 / lam);
        s.vertices = {Point{0.0, 0.0, "A"}, Point{0.0, L / lam}, Point{-half_x, half_y}, Point{half_x, half_y}};
        return s;
    }

    s.center = Point{0.0, -half_y};
    s.conjugate_axis_y = -half_y;
    s.vertices = {Point{0.0, 0.0, "A"}, Point{0.0, -L / lam, "A*"}};
    const double slope = 1.0 / std::sqrt(lam);
    s.asymptote_slopes = std::pair{slope, -slope};
    s.eccentricity = std::sqrt(1.0 + lam);
    return s;
}

using ConicCoefficients = std::array<double, 6>;  // a x^2 + b xy + c y^2 + d x + e y + f

// Scale so the largest-magnitude coefficient is +1 (first one wins ties).
inline ConicCoefficients normalize_gauge(ConicCoefficients c) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (std::abs(c[i]) > std::abs(c[k])) k = i;
    }
    const double s = c[k];
    if (s == 0.0) throw DegenerateFit("all conic coefficients vanish");
    for (auto& v : c) v /= s;
    return c;
}

// Implicit equation rebuilt from the derived center, semi-axes and
// coefficient rather than from L and lambda directly. Gauge-normalized.
inline ConicCoefficients implicit_coefficients(const ConicSpec& s) {
    if (s.kind == ConicKind::Parabola) {
        return normalize_gauge({*s.coefficient, 0.0, 0.0, 0.0, -1.0, 0.0});
    }
    const double ax = *s.semi_axis_x;
    const double ay = *s.semi_axis_y;
    const double k = s.center->y;
    // +/- x^2/ax^2 + (y - k)^2/ay^2 - 1 = 0
    const double sx = s.kind == ConicKind::Ellipse ? 1.0 : -1.0;
    const double iy = 1.0 / (ay * ay);
    return normalize_gauge({sx / (ax * ax), 0.0, iy, 0.0, -2.0 * k * iy, k * k * iy - 1.0});
}

struct ResidualReport {
    double max_residual = 0.0;           // max |x^2 - (L y +/- lambda y^2)|
    double max_standard_residual = 0.0;  // same for the centered standard form
    std::optional<LocusPoint> worst_point;
    bool pass = true;
};

// Lower hyperbola points are reflected across the conjugate axis before
// being tested. A point passes when each residual is within tol times the
// magnitude of the terms it balances (floored at 1).
inline ResidualReport verify_residuals(std::span<const LocusPoint> points, ConicKind kind, double L,
                                       std::optional<double> lambda, double tol) {
    detail::check_conic_args(kind, L, lambda);
    const double lam = lambda.value_or(0.0);
    const double sgn = detail::sign_of_lambda_term(kind);
    ResidualReport rep;
    for (const auto& p : points) {
        double y = p.y;
        if (kind == ConicKind::Hyperbola && p.branch == Branch::Lower) {
            y = -L / lam - p.y;
        }
        const double x2 = p.x * p.x;
        const double rhs = L * y + sgn * lam * y * y;
        const double res = std::abs(x2 - rhs);
        const double scale = std::max(1.0, x2 + std::abs(L * y) + lam * y * y);

        double std_res = 0.0;
        double std_scale = 1.0;
        if (kind == ConicKind::Parabola) {
            std_res = std::abs(y - x2 / L);
            std_scale = std::max(1.0, std::abs(y) + x2 / L);
        } else {
            const double ax = L / (2.0 * std::sqrt(lam));
            const double ay = L / (2.0 * lam);
            const double k = kind == ConicKind::Ellipse ? ay : -ay;
            const double tx = x2 / (ax * ax);
            const double ty = (y - k) * (y - k) / (ay * ay);
            std_res = std::abs((kind == ConicKind::Ellipse ? tx : -tx) + ty - 1.0);
            std_scale = std::max(1.0, tx + ty);
        }

        if (!rep.worst_point || res > rep.max_residual) {
            rep.max_residual = res;
            rep.worst_point = p;
        }
        rep.max_standard_residual = std::max(rep.max_standard_residual, std_res);
        if (!(res <= tol * scale) || !(std_res <= tol * std_scale)) {
            rep.pass = false;
        }
    }
    return rep;
}

// Least-squares conic through the points: null vector of the design matrix
// [x^2, xy, y^2, x, y, 1] after translating to the centroid and scaling to
// mean distance sqrt(2). Independent of the constructions.
inline ConicCoefficients fit_conic_oracle(std::span<const LocusPoint> points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (n < 6) {
        throw DegenerateFit("conic fit needs at least 6 points, got " + std::to_string(points.size()));
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double mean_dist = 0.0;
    for (const auto& p : points) mean_dist += std::hypot(p.x - mx, p.y - my);
    mean_dist /= static_cast<double>(n);
    if (!(mean_dist > 0.0)) throw DegenerateFit("all points coincide");
    const double s = std::sqrt(2.0) / mean_dist;

    Eigen::MatrixXd design(n, 6);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        const double u = s * (p.x - mx);
        const double v = s * (p.y - my);
        design.row(i) << u * u, u * v, v * v, u, v, 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (!(sv(4) > 1e-9 * sv(0))) {
        throw DegenerateFit("points do not determine a unique conic");
    }
    const Eigen::VectorXd q = svd.matrixV().col(5);

    // Undo x' = s (x - mx), y' = s (y - my).
    const double s2 = s * s;
    const double a = q(0) * s2;
    const double b = q(1) * s2;
    const double c = q(2) * s2;
    const double d = -2.0 * a * mx - b * my + q(3) * s;
    const double e = -b * mx - 2.0 * c * my + q(4) * s;
    const double f = a * mx * mx + b * mx * my + c * my * my - q(3) * s * mx - q(4) * s * my + q(5);
    return normalize_gauge({a, b, c, d, e, f});
}

} // namespace conics
