#pragma once

// Exact, deficient and excessive application of areas with the companion
// square built by the semicircle construction. Every construction is
// recorded as a ConstructionTrace and executed through the same step
// interpreter that replay_trace uses, so replays are bit-exact.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conics/errors.hpp"
#include "conics/format.hpp"
#include "conics/geom_kernel.hpp"

namespace conics {

enum class ApplicationKind { Exact, Deficient, Excess };

inline std::string_view to_string(ApplicationKind k) noexcept {
    switch (k) {
    case ApplicationKind::Exact: return "exact";
    case ApplicationKind::Deficient: return "deficient";
    case ApplicationKind::Excess: return "excess";
    }
    return "exact";
}

namespace labels {
inline const std::string B_minus = "B⁻";
inline const std::string C_minus = "C⁻";
inline const std::string B_plus = "B⁺";
inline const std::string C_plus = "C⁺";
} // namespace labels

struct ApplicationSpec {
    ApplicationKind kind = ApplicationKind::Exact;
    double base_L = 1.0;
    std::optional<double> lambda;  // absent for Exact
    double height_y = 1.0;

    // Throws DomainError (or DeficiencyExceedsBase) when the invariants fail.
    void validate() const {
        if (!(base_L > 0.0) || !std::isfinite(base_L)) {
            throw DomainError("base L must be positive, got " + format_number(base_L));
        }
        if (!(height_y > 0.0) || !std::isfinite(height_y)) {
            throw DomainError("height y must be positive, got " + format_number(height_y));
        }
        if (kind == ApplicationKind::Exact) {
            if (lambda) {
                throw DomainError("exact application takes no lambda");
            }
            return;
        }
        if (!lambda) {
            throw DomainError(std::string(to_string(kind)) + " application requires lambda");
        }
        if (!(*lambda > 0.0) || !std::isfinite(*lambda)) {
            throw DomainError("lambda must be positive, got " + format_number(*lambda));
        }
        if (kind == ApplicationKind::Deficient && !(*lambda * height_y < base_L)) {
            throw DeficiencyExceedsBase("deficiency exceeds base: lambda*height = " +
                                        format_number(*lambda * height_y) + " >= base L = " +
                                        format_number(base_L));
        }
    }

    // AB, AB- = L - lambda*y or AB+ = L + lambda*y.
    [[nodiscard]] double rect_base() const {
        switch (kind) {
        case ApplicationKind::Exact: return base_L;
        case ApplicationKind::Deficient: return base_L - *lambda * height_y;
        case ApplicationKind::Excess: return base_L + *lambda * height_y;
        }
        return base_L;
    }
};

enum class StepOp { Extend, Bisect, DescribeCircle, ErectPerpendicular, IntersectCircleLine, MarkSegment };

inline constexpr std::array<std::pair<StepOp, std::string_view>, 6> kStepOpNames{{
    {StepOp::Extend, "Extend"},
    {StepOp::Bisect, "Bisect"},
    {StepOp::DescribeCircle, "DescribeCircle"},
    {StepOp::ErectPerpendicular, "ErectPerpendicular"},
    {StepOp::IntersectCircleLine, "IntersectCircleLine"},
    {StepOp::MarkSegment, "MarkSegment"},
}};

inline std::string_view to_string(StepOp op) noexcept {
    for (const auto& [o, name] : kStepOpNames) {
        if (o == op) return name;
    }
    return "Extend";
}

inline std::optional<StepOp> step_op_from_string(std::string_view s) noexcept {
    for (const auto& [o, name] : kStepOpNames) {
        if (name == s) return o;
    }
    return std::nullopt;
}

// Input arity and whether the step carries a numeric length.
//   Extend              [through, from] + length
//   Bisect              [p, q]
//   DescribeCircle      [center, p, q]       radius |pq|
//   ErectPerpendicular  [at, p, q]           perpendicular at `at` to line pq
//   IntersectCircleLine [circle, line]       last intersection in (y, x) order
//   MarkSegment         [origin, toward] + length
inline constexpr std::size_t step_arity(StepOp op) noexcept {
    switch (op) {
    case StepOp::Extend: return 2;
    case StepOp::Bisect: return 2;
    case StepOp::DescribeCircle: return 3;
    case StepOp::ErectPerpendicular: return 3;
    case StepOp::IntersectCircleLine: return 2;
    case StepOp::MarkSegment: return 2;
    }
    return 0;
}

inline constexpr bool step_takes_length(StepOp op) noexcept {
    return op == StepOp::Extend || op == StepOp::MarkSegment;
}

struct ConstructionStep {
    StepOp op = StepOp::Extend;
    std::vector<std::string> inputs;
    std::string output;
    std::string citation;  // Elements proposition, e.g. "I.10"
    std::optional<double> length;

    friend bool operator==(const ConstructionStep&, const ConstructionStep&) = default;
};

struct ConstructionTrace {
    std::vector<Point> initial;  // labeled; {A, B} for the applications
    std::vector<ConstructionStep> steps;
};

using PointMap = std::map<std::string, Point>;

// Interpreter state for a trace: every label names exactly one point,
// circle or line.
class ConstructionState {
public:
    explicit ConstructionState(const std::vector<Point>& initial, Tolerance tol = {}) : tol_(tol) {
        for (const auto& p : initial) {
            if (!p.label || p.label->empty()) {
                throw MalformedTrace("initial point without a label");
            }
            if (!p.finite()) {
                throw MalformedTrace("initial point " + *p.label + " has non-finite coordinates");
            }
            define(*p.label);
            points_.emplace(*p.label, p);
        }
    }

    void execute(const ConstructionStep& step) {
        if (step.inputs.size() != step_arity(step.op)) {
            throw MalformedTrace(std::string(to_string(step.op)) + " step '" + step.output + "' expects " +
                                 std::to_string(step_arity(step.op)) + " inputs, got " +
                                 std::to_string(step.inputs.size()));
        }
        if (step.citation.empty()) {
            throw MalformedTrace("step '" + step.output + "' has no citation");
        }
        if (step_takes_length(step.op) != step.length.has_value()) {
            throw MalformedTrace("step '" + step.output + "': length is " +
                                 (step.length ? "not allowed" : "required") + " for " +
                                 std::string(to_string(step.op)));
        }
        if (step.output.empty()) {
            throw MalformedTrace("step without an output label");
        }
        const auto& in = step.inputs;
        switch (step.op) {
        case StepOp::Extend:
            add_point(step.output, extend_along_ray(point(in[0]), point(in[1]), *step.length));
            break;
        case StepOp::MarkSegment:
            add_point(step.output, mark_along_ray(point(in[0]), point(in[1]), *step.length));
            break;
        case StepOp::Bisect:
            add_point(step.output, midpoint(point(in[0]), point(in[1])));
            break;
        case StepOp::DescribeCircle: {
            const Point& center = point(in[0]);
            const double r = distance(point(in[1]), point(in[2]));
            define(step.output);
            circles_.emplace(step.output, Circle{center, r});
            break;
        }
        case StepOp::ErectPerpendicular: {
            const Line base = Line::through(point(in[1]), point(in[2]));
            Line perp = erect_perpendicular(point(in[0]), base, tol_);
            define(step.output);
            lines_.emplace(step.output, std::move(perp));
            break;
        }
        case StepOp::IntersectCircleLine: {
            const auto hits = intersect_circle_line(circle(in[0]), line(in[1]), tol_);
            if (hits.empty()) {
                throw GeometricFailure("step '" + step.output + "': circle " + in[0] + " misses line " + in[1]);
            }
            add_point(step.output, hits.back());
            break;
        }
        }
    }

    [[nodiscard]] const PointMap& points() const noexcept { return points_; }

    [[nodiscard]] const Point& point(const std::string& label) const {
        auto it = points_.find(label);
        if (it == points_.end()) {
            throw MalformedTrace("undefined point label '" + label + "'");
        }
        return it->second;
    }

    [[nodiscard]] const Circle& circle(const std::string& label) const {
        auto it = circles_.find(label);
        if (it == circles_.end()) {
            throw MalformedTrace("undefined circle label '" + label + "'");
        }
        return it->second;
    }

    [[nodiscard]] const Line& line(const std::string& label) const {
        auto it = lines_.find(label);
        if (it == lines_.end()) {
            throw MalformedTrace("undefined line label '" + label + "'");
        }
        return it->second;
    }

private:
    void define(const std::string& label) {
        if (points_.count(label) || circles_.count(label) || lines_.count(label)) {
            throw MalformedTrace("label '" + label + "' defined twice");
        }
    }

    void add_point(const std::string& label, Point p) {
        define(label);
        p.label = label;
        points_.emplace(label, std::move(p));
    }

    Tolerance tol_;
    PointMap points_;
    std::map<std::string, Circle> circles_;
    std::map<std::string, Line> lines_;
};

inline PointMap replay_trace(const ConstructionTrace& trace) {
    ConstructionState state(trace.initial);
    for (const auto& step : trace.steps) {
        state.execute(step);
    }
    return state.points();
}

struct ApplicationResult {
    ApplicationSpec spec;
    double rect_base_b = 0.0;
    double area_X = 0.0;
    double square_side_g = 0.0;
    Point J;
    PointMap figure_points;
    ConstructionTrace trace;
};

namespace detail {

class TraceBuilder {
public:
    explicit TraceBuilder(std::vector<Point> initial) : state_(initial) { trace_.initial = std::move(initial); }

    void step(StepOp op, std::vector<std::string> inputs, std::string output, std::string citation,
              std::optional<double> length = std::nullopt) {
        ConstructionStep s{op, std::move(inputs), std::move(output), std::move(citation), length};
        state_.execute(s);
        trace_.steps.push_back(std::move(s));
    }

    [[nodiscard]] const ConstructionState& state() const noexcept { return state_; }
    [[nodiscard]] ConstructionTrace take_trace() { return std::move(trace_); }

private:
    ConstructionState state_;
    ConstructionTrace trace_;
};

// Corners at `foot` of a rectangle of height AD erected on AB's line.
inline void erect_corner(TraceBuilder& b, const std::string& foot, const std::string& corner,
                         const std::string& citation) {
    b.step(StepOp::ErectPerpendicular, {foot, "A", foot}, "perp(" + foot + ")", "I.11");
    b.step(StepOp::DescribeCircle, {foot, "A", "D"}, "circ(" + foot + ",AD)", "I.3");
    b.step(StepOp::IntersectCircleLine, {"circ(" + foot + ",AD)", "perp(" + foot + ")"}, corner, citation);
}

inline ApplicationResult apply(const ApplicationSpec& spec) {
    spec.validate();
    const double L = spec.base_L;
    const double y = spec.height_y;

    TraceBuilder b({Point{0.0, 0.0, "A"}, Point{L, 0.0, "B"}});

    // Extend AB to E with EA the given height, and make AD equal to EA.
    b.step(StepOp::Extend, {"A", "B"}, "E", "I.3", y);
    b.step(StepOp::ErectPerpendicular, {"A", "A", "B"}, "perp(A)", "I.11");
    b.step(StepOp::DescribeCircle, {"A", "E", "A"}, "circ(A,EA)", "I.3");
    b.step(StepOp::IntersectCircleLine, {"circ(A,EA)", "perp(A)"}, "D", "I.3");

    // The applied rectangle's far edge.
    std::string base_end = "B";
    erect_corner(b, "B", "C", "I.46");
    if (spec.kind == ApplicationKind::Deficient) {
        base_end = labels::B_minus;
        b.step(StepOp::MarkSegment, {"B", "A"}, base_end, "VI.28", *spec.lambda * y);
        erect_corner(b, base_end, labels::C_minus, "VI.28");
    } else if (spec.kind == ApplicationKind::Excess) {
        base_end = labels::B_plus;
        b.step(StepOp::Extend, {"B", "A"}, base_end, "VI.29", *spec.lambda * y);
        erect_corner(b, base_end, labels::C_plus, "VI.29");
    }

    // Semicircle on E and the base end; its chord through A is the mean
    // proportional AG (II.5 with I.47).
    b.step(StepOp::Bisect, {"E", base_end}, "F", "I.10");
    b.step(StepOp::DescribeCircle, {"F", "F", base_end}, "circ(F)", "I.Def.18");
    b.step(StepOp::IntersectCircleLine, {"circ(F)", "perp(A)"}, "G", "II.5, I.47");

    // Square AIHG on AB's line and the corner J where IH meets DC.
    b.step(StepOp::ErectPerpendicular, {"A", "A", "G"}, "line(AB)", "I.11");
    b.step(StepOp::DescribeCircle, {"A", "A", "G"}, "circ(A,AG)", "I.3");
    b.step(StepOp::IntersectCircleLine, {"circ(A,AG)", "line(AB)"}, "I", "I.46");
    b.step(StepOp::ErectPerpendicular, {"I", "A", "I"}, "perp(I)", "I.11");
    b.step(StepOp::DescribeCircle, {"I", "A", "I"}, "circ(I,AI)", "I.46");
    b.step(StepOp::IntersectCircleLine, {"circ(I,AI)", "perp(I)"}, "H", "I.46");
    b.step(StepOp::DescribeCircle, {"I", "A", "D"}, "circ(I,AD)", "I.3");
    b.step(StepOp::IntersectCircleLine, {"circ(I,AD)", "perp(I)"}, "J", "I.46");

    const auto& pts = b.state().points();
    ApplicationResult r;
    r.spec = spec;
    r.rect_base_b = spec.rect_base();
    r.area_X = r.rect_base_b * y;
    r.square_side_g = distance(pts.at("A"), pts.at("G"));
    r.J = pts.at("J");
    r.figure_points = pts;
    r.trace = b.take_trace();
    return r;
}

} // namespace detail

// Problem 1: square equal to the rectangle applied exactly on AB.
inline ApplicationResult apply_exact(double L, double y) {
    return detail::apply({ApplicationKind::Exact, L, std::nullopt, y});
}

// Rectangle on AB- = L - lambda*y, falling short by a lambda*y by y rectangle.
inline ApplicationResult apply_deficient(double L, double lambda, double y) {
    return detail::apply({ApplicationKind::Deficient, L, lambda, y});
}

// Rectangle on AB+ = L + lambda*y, exceeding by a lambda*y by y rectangle.
inline ApplicationResult apply_excess(double L, double lambda, double y) {
    return detail::apply({ApplicationKind::Excess, L, lambda, y});
}

inline ApplicationResult apply(const ApplicationSpec& spec) { return detail::apply(spec); }

// Heights y at which the application has the requested area, ascending.
// Deficient returns both roots of lambda*y^2 - L*y + area = 0 (equal at the
// maximum L^2/(4 lambda)); Excess returns the positive root of
// lambda*y^2 + L*y - area = 0.
inline std::vector<double> solve_height_for_area(ApplicationKind kind, double L, std::optional<double> lambda,
                                                 double area, const Tolerance& tol = {}) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("base L must be positive, got " + format_number(L));
    }
    if (!(area > 0.0) || !std::isfinite(area)) {
        throw DomainError("area must be positive, got " + format_number(area));
    }
    if (kind == ApplicationKind::Exact) {
        if (lambda) throw DomainError("exact application takes no lambda");
        return {area / L};
    }
    if (!lambda) {
        throw DomainError(std::string(to_string(kind)) + " application requires lambda");
    }
    const double lam = *lambda;
    if (!(lam > 0.0) || !std::isfinite(lam)) {
        throw DomainError("lambda must be positive, got " + format_number(lam));
    }

    if (kind == ApplicationKind::Excess) {
        // 2c / (-b + sqrt(b^2 - 4ac)) form; no cancellation for the positive root.
        return {2.0 * area / (L + std::sqrt(L * L + 4.0 * lam * area))};
    }

    const double max_area = L * L / (4.0 * lam);
    double disc = L * L - 4.0 * lam * area;
    if (disc < 0.0) {
        if (!tol.negligible(disc, L * L)) {
            throw InfeasibleArea("infeasible area: " + format_number(area) +
                                 " exceeds the maximal applicable area L^2/(4*lambda) = " + format_number(max_area));
        }
        disc = 0.0;
    } else if (tol.negligible(disc, L * L)) {
        disc = 0.0;
    }
    if (disc == 0.0) {
        const double y = L / (2.0 * lam);
        return {y, y};
    }
    const double q = 0.5 * (L + std::sqrt(disc));
    return {area / q, q / lam};
}

} // namespace conics
