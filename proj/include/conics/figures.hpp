#pragma once

// Renderer-neutral scenes for application diagrams and conic loci, and a
// deterministic SVG 1.1 writer.
//
// SVG conventions (fixed, golden-file stable):
//   canvas       longest side of the expanded bounding box mapped to 600 units
//   margin       bounding box grown by 10% per axis about its center
//   y axis       flipped so mathematical +y points up
//   strokes      black, width 1.5; dashed strokes use stroke-dasharray "6 4"
//   dots         filled circles of radius 3
//   labels       serif, font-size 14, offset (+5, -5) from their anchor
//   numbers      fixed-point with 3 decimals
// Segments become <line>, arcs <path> with elliptical-arc commands, dots
// <circle>, labels <text>; nothing else draws.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "conics/constructions.hpp"
#include "conics/errors.hpp"
#include "conics/format.hpp"
#include "conics/geom_kernel.hpp"
#include "conics/locus.hpp"

namespace conics {

struct Segment {
    Point p;
    Point q;
};

// Counter-clockwise from start to end, radians, start < end.
struct Arc {
    Circle circle;
    double start = 0.0;
    double end = std::numbers::pi;
};

struct Dot {
    Point at;
};

struct Label {
    Point at;
    std::string text;
};

enum class Stroke { Solid, Dashed };

struct StyledPrimitive {
    std::variant<Segment, Arc, Dot, Label> shape;
    Stroke stroke = Stroke::Solid;
    std::string role;  // emitted as the SVG class attribute when non-empty
};

struct BoundingBox {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    static BoundingBox around(const Point& p) { return {p.x, p.y, p.x, p.y}; }

    void include(const Point& p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    }

    [[nodiscard]] bool contains(const Point& p, double slack = 1e-9) const {
        return p.x >= min_x - slack && p.x <= max_x + slack && p.y >= min_y - slack && p.y <= max_y + slack;
    }
};

class Scene {
public:
    std::vector<StyledPrimitive> primitives;
    std::optional<BoundingBox> bounds;

    void segment(const Point& p, const Point& q, Stroke stroke, std::string role) {
        primitives.push_back({Segment{p, q}, stroke, std::move(role)});
    }

    void arc(const Circle& c, double start, double end, std::string role) {
        if (!(start < end)) throw DomainError("arc start angle must precede end angle");
        primitives.push_back({Arc{c, start, end}, Stroke::Solid, std::move(role)});
    }

    void dot(const Point& p, std::string role) { primitives.push_back({Dot{p}, Stroke::Solid, std::move(role)}); }

    void label(const Point& p, std::string text) {
        if (text.empty()) throw DomainError("label text must be non-empty");
        primitives.push_back({Label{p, std::move(text)}, Stroke::Solid, "label"});
    }

    [[nodiscard]] bool empty() const noexcept { return primitives.empty(); }
};

namespace detail {

inline Point on_circle(const Circle& c, double angle) {
    return {c.center.x + c.radius * std::cos(angle), c.center.y + c.radius * std::sin(angle)};
}

// Points that bound the primitive: segment ends, arc ends plus the axis
// extremes the arc sweeps through, anchors of dots and labels.
inline std::vector<Point> extreme_points(const StyledPrimitive& prim) {
    return std::visit(
        [](const auto& s) -> std::vector<Point> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Segment>) {
                return {s.p, s.q};
            } else if constexpr (std::is_same_v<T, Arc>) {
                std::vector<Point> pts{on_circle(s.circle, s.start), on_circle(s.circle, s.end)};
                const double quarter = std::numbers::pi / 2.0;
                for (double k = std::ceil(s.start / quarter); k * quarter < s.end; k += 1.0) {
                    pts.push_back(on_circle(s.circle, k * quarter));
                }
                return pts;
            } else {
                return {s.at};
            }
        },
        prim.shape);
}

} // namespace detail

inline BoundingBox bounding_box(std::span<const StyledPrimitive> prims) {
    if (prims.empty()) throw EmptyScene("bounding box of an empty scene");
    std::optional<BoundingBox> box;
    for (const auto& prim : prims) {
        for (const auto& p : detail::extreme_points(prim)) {
            if (!box) {
                box = BoundingBox::around(p);
            } else {
                box->include(p);
            }
        }
    }
    return *box;
}

namespace detail {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string class_attr(const std::string& role) {
    return role.empty() ? std::string{} : " class=\"" + xml_escape(role) + "\"";
}

struct Canvas {
    double origin_x;
    double top_y;
    double scale;
    double width;
    double height;

    [[nodiscard]] std::string x(double v) const { return format_fixed((v - origin_x) * scale, 3); }
    [[nodiscard]] std::string y(double v) const { return format_fixed((top_y - v) * scale, 3); }
};

inline Canvas make_canvas(const BoundingBox& box) {
    constexpr double kCanvasSize = 600.0;
    double w = box.max_x - box.min_x;
    double h = box.max_y - box.min_y;
    if (w <= 0.0 && h <= 0.0) {
        w = h = 1.0;
    } else if (w <= 0.0) {
        w = h;
    } else if (h <= 0.0) {
        h = w;
    }
    const double cx = 0.5 * (box.min_x + box.max_x);
    const double cy = 0.5 * (box.min_y + box.max_y);
    const double ew = 1.1 * w;
    const double eh = 1.1 * h;
    const double scale = kCanvasSize / std::max(ew, eh);
    return {cx - 0.5 * ew, cy + 0.5 * eh, scale, ew * scale, eh * scale};
}

} // namespace detail

inline std::string render_svg(const Scene& scene) {
    if (scene.empty()) throw EmptyScene("cannot render an empty scene");
    const BoundingBox content = bounding_box(scene.primitives);
    if (scene.bounds && !(scene.bounds->contains({content.min_x, content.min_y}) &&
                          scene.bounds->contains({content.max_x, content.max_y}))) {
        throw DomainError("explicit scene bounds do not contain every primitive");
    }
    const BoundingBox box = scene.bounds.value_or(content);
    const auto cv = detail::make_canvas(box);
    const std::string w = format_fixed(cv.width, 3);
    const std::string h = format_fixed(cv.height, 3);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
       << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" font-family=\"serif\" font-size=\"14\">\n";

    for (const auto& prim : scene.primitives) {
        const std::string cls = detail::class_attr(prim.role);
        const std::string dash = prim.stroke == Stroke::Dashed ? " stroke-dasharray=\"6 4\"" : "";
        if (const auto* s = std::get_if<Segment>(&prim.shape)) {
            os << "<line" << cls << " x1=\"" << cv.x(s->p.x) << "\" y1=\"" << cv.y(s->p.y) << "\" x2=\""
               << cv.x(s->q.x) << "\" y2=\"" << cv.y(s->q.y) << '"' << dash << "/>\n";
        } else if (const auto* a = std::get_if<Arc>(&prim.shape)) {
            const std::string r = format_fixed(a->circle.radius * cv.scale, 3);
            // Math counter-clockwise is sweep-flag 0 once y is flipped. Sweeps of a
            // full turn or more are drawn as two pieces.
            const double span = a->end - a->start;
            std::vector<double> stops{a->start};
            if (span >= 2.0 * std::numbers::pi) stops.push_back(a->start + 0.5 * span);
            stops.push_back(a->end);
            const Point p0 = detail::on_circle(a->circle, stops.front());
            os << "<path" << cls << " d=\"M " << cv.x(p0.x) << ' ' << cv.y(p0.y);
            for (std::size_t i = 1; i < stops.size(); ++i) {
                const Point pi = detail::on_circle(a->circle, stops[i]);
                const int large = stops[i] - stops[i - 1] > std::numbers::pi ? 1 : 0;
                os << " A " << r << ' ' << r << " 0 " << large << " 0 " << cv.x(pi.x) << ' ' << cv.y(pi.y);
            }
            os << '"' << dash << "/>\n";
        } else if (const auto* d = std::get_if<Dot>(&prim.shape)) {
            os << "<circle" << cls << " cx=\"" << cv.x(d->at.x) << "\" cy=\"" << cv.y(d->at.y)
               << "\" r=\"3\" fill=\"black\" stroke=\"none\"/>\n";
        } else if (const auto* l = std::get_if<Label>(&prim.shape)) {
            os << "<text" << cls << " x=\"" << format_fixed((l->at.x - cv.origin_x) * cv.scale + 5.0, 3)
               << "\" y=\"" << format_fixed((cv.top_y - l->at.y) * cv.scale - 5.0, 3)
               << "\" fill=\"black\" stroke=\"none\">" << detail::xml_escape(l->text) << "</text>\n";
        }
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

// Construction diagram: given segment, applied rectangle (tops dashed),
// companion square, the semicircle with FG, and every labeled point.
inline Scene scene_from_application(const ApplicationResult& r) {
    const auto& fp = r.figure_points;
    std::string base_end = "B";
    std::string corner = "C";
    if (r.spec.kind == ApplicationKind::Deficient) {
        base_end = labels::B_minus;
        corner = labels::C_minus;
    } else if (r.spec.kind == ApplicationKind::Excess) {
        base_end = labels::B_plus;
        corner = labels::C_plus;
    }
    const auto P = [&](const std::string& l) -> const Point& { return fp.at(l); };

    Scene s;
    s.segment(P("E"), P("A"), Stroke::Solid, "construction");
    s.segment(P("A"), P("B"), Stroke::Solid, "base");
    if (r.spec.kind == ApplicationKind::Excess) {
        s.segment(P("B"), P(base_end), Stroke::Solid, "base");
    }
    // Applied rectangle A-base_end-corner-D.
    s.segment(P(base_end), P(corner), Stroke::Solid, "rectangle");
    s.segment(P(corner), P("D"), Stroke::Dashed, "rect-top");
    s.segment(P("D"), P("A"), Stroke::Solid, "rectangle");
    if (r.spec.kind != ApplicationKind::Exact) {
        // Deficiency or excess rectangle between B and base_end.
        s.segment(P("B"), P("C"), Stroke::Solid, "rectangle");
        s.segment(P("C"), P(corner), Stroke::Dashed, "rect-top");
    }
    s.segment(P("A"), P("I"), Stroke::Solid, "square");
    s.segment(P("I"), P("H"), Stroke::Solid, "square");
    s.segment(P("H"), P("G"), Stroke::Solid, "square");
    s.segment(P("G"), P("A"), Stroke::Solid, "square");
    s.segment(P("F"), P("G"), Stroke::Solid, "construction");
    s.arc(Circle{P("F"), distance(P("F"), P(base_end))}, 0.0, std::numbers::pi, "semicircle");
    for (const auto& [label, p] : fp) {
        s.dot(p, "point");
        s.label(p, label);
    }
    return s;
}

namespace detail {

// Clip the line through `p` with direction `d` to `box`; empty when it misses.
inline std::optional<Segment> clip_line(const Point& p, const Vec2& d, const BoundingBox& box) {
    double t0 = -std::numeric_limits<double>::infinity();
    double t1 = std::numeric_limits<double>::infinity();
    const std::array<std::array<double, 3>, 2> slabs{{{p.x, d.x, 0.0}, {p.y, d.y, 0.0}}};
    const std::array<std::pair<double, double>, 2> lim{{{box.min_x, box.max_x}, {box.min_y, box.max_y}}};
    for (std::size_t i = 0; i < 2; ++i) {
        const double o = slabs[i][0];
        const double v = slabs[i][1];
        if (v == 0.0) {
            if (o < lim[i].first || o > lim[i].second) return std::nullopt;
            continue;
        }
        double a = (lim[i].first - o) / v;
        double b = (lim[i].second - o) / v;
        if (a > b) std::swap(a, b);
        t0 = std::max(t0, a);
        t1 = std::min(t1, b);
    }
    if (!(t0 < t1)) return std::nullopt;
    return Segment{p + t0 * d, p + t1 * d};
}

inline std::string locus_label(ConicKind kind, const LocusPoint& p) {
    if (kind == ConicKind::Hyperbola) {
        if (p.branch == Branch::Upper) return p.x < 0.0 ? "J⁻" : "J⁺";
        return p.x < 0.0 ? "J₋" : "J₊";
    }
    return p.x < 0.0 ? "J′" : "J";
}

} // namespace detail

// Locus diagram: J points with the dashed tops of their applied rectangles
// and the solid sides of their companion squares. Hyperbolas add the dashed
// conjugate axis and both asymptotes clipped to the drawing.
inline Scene scene_from_locus(std::span<const LocusPoint> points, const ConicSpec& spec) {
    if (points.empty()) throw EmptyScene("locus scene needs at least one point");
    const double L = spec.base_L;
    const double lam = spec.lambda.value_or(0.0);
    const bool hyperbola = spec.kind == ConicKind::Hyperbola;
    const double far_vertex = hyperbola ? -L / lam : 0.0;

    Scene s;
    s.segment({-L, 0.0}, {L, 0.0}, Stroke::Solid, "base");
    s.label({0.0, 0.0}, "A");
    s.label({L, 0.0}, "B");
    s.label({-L, 0.0}, "B′");
    if (hyperbola) {
        s.segment({-L, far_vertex}, {L, far_vertex}, Stroke::Solid, "base");
        s.label({0.0, far_vertex}, "A*");
        s.label({L, far_vertex}, "B*");
        s.label({-L, far_vertex}, "B*′");
    }

    // The curve itself, traced through the constructions.
    double y_hi = 0.0;
    for (const auto& p : points) {
        const double h = p.branch == Branch::Lower ? far_vertex - p.y : p.y;
        y_hi = std::max(y_hi, h);
    }
    const double y_curve = spec.kind == ConicKind::Ellipse ? L / lam : std::max(1.15 * y_hi, 1e-3);
    auto curve = sample_locus(spec.kind, L, spec.lambda, SampleRange{0.0, y_curve, 48});
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const auto& a = curve[i];
        const auto& b = curve[i + 1];
        if (a.branch != b.branch) continue;
        s.segment({a.x, a.y}, {b.x, b.y}, Stroke::Solid, "curve");
        s.segment({-a.x, a.y}, {-b.x, b.y}, Stroke::Solid, "curve");
    }

    for (const auto& p : points) {
        const bool lower = hyperbola && p.branch == Branch::Lower;
        const double origin = lower ? far_vertex : 0.0;
        const double up = lower ? -1.0 : 1.0;
        const double h = std::abs(p.y - origin);
        if (p.x != 0.0) {
            const double sx = p.x < 0.0 ? -1.0 : 1.0;
            double base = L;
            if (spec.kind == ConicKind::Ellipse) base = L - lam * h;
            if (hyperbola) base = L + lam * h;
            const double g = std::abs(p.x);
            s.segment({0.0, p.y}, {sx * base, p.y}, Stroke::Dashed, "rect-top");
            s.segment({p.x, origin}, {p.x, origin + up * g}, Stroke::Solid, "square");
            s.segment({p.x, origin + up * g}, {0.0, origin + up * g}, Stroke::Solid, "square");
        }
        s.dot({p.x, p.y}, "locus");
        s.label({p.x, p.y}, detail::locus_label(spec.kind, p));
    }

    if (hyperbola) {
        const BoundingBox box = bounding_box(s.primitives);
        const double c = *spec.conjugate_axis_y;
        s.segment({box.min_x, c}, {box.max_x, c}, Stroke::Dashed, "conjugate-axis");
        for (double slope : {spec.asymptote_slopes->first, spec.asymptote_slopes->second}) {
            if (auto seg = detail::clip_line({0.0, c}, {1.0, slope}, box)) {
                s.segment(seg->p, seg->q, Stroke::Dashed, "asymptote");
            }
        }
    }
    return s;
}

// Bundled parameters for the nine reproduced figures.
struct FigureDefaults {
    int number = 1;
    std::optional<ApplicationSpec> application;  // construction figures
    std::optional<ConicKind> conic;              // locus figures
    double base_L = 1.0;
    std::optional<double> lambda;
    std::vector<double> heights;
    std::string caption;
};

inline FigureDefaults figure_defaults(int n) {
    using AK = ApplicationKind;
    switch (n) {
    case 1: return {1, ApplicationSpec{AK::Exact, 4.0, std::nullopt, 1.0}, {}, 4.0, {}, {}, "exact, AB > BC"};
    case 2: return {2, ApplicationSpec{AK::Exact, 2.0, std::nullopt, 3.0}, {}, 2.0, {}, {}, "exact, AB < BC"};
    case 3: return {3, {}, ConicKind::Parabola, 2.0, {}, {0.5, 2.0, 4.5}, "parabola, three J/J' pairs"};
    case 4: return {4, ApplicationSpec{AK::Deficient, 4.0, 1.0, 1.0}, {}, 4.0, 1.0, {}, "deficient, AB- >= B-C-"};
    case 5: return {5, ApplicationSpec{AK::Deficient, 4.0, 1.0, 3.0}, {}, 4.0, 1.0, {}, "deficient, AB- < B-C-"};
    case 6: return {6, {}, ConicKind::Ellipse, 4.0, 0.5, {1.0, 3.0, 6.0}, "ellipse, three J/J' pairs"};
    case 7: return {7, ApplicationSpec{AK::Excess, 2.0, 1.0, 1.0}, {}, 2.0, 1.0, {}, "excess, AB+ >= B+C+"};
    case 8: return {8, ApplicationSpec{AK::Excess, 1.0, 0.25, 4.0}, {}, 1.0, 0.25, {}, "excess, AB+ < B+C+"};
    case 9: return {9, {}, ConicKind::Hyperbola, 2.0, 1.0, {1.0}, "hyperbola, four J points"};
    default: throw DomainError("figure number must be in 1..9, got " + std::to_string(n));
    }
}

inline Scene figure_scene(const FigureDefaults& d) {
    if (d.application) return scene_from_application(apply(*d.application));
    const auto pts = mirror(sample_locus_at(*d.conic, d.base_L, d.lambda, d.heights));
    return scene_from_locus(pts, conic_params(*d.conic, d.base_L, d.lambda));
}

inline std::string figure_svg(int n) { return render_svg(figure_scene(figure_defaults(n))); }

} // namespace conics
