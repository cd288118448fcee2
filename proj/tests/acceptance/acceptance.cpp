// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "conics/conics.hpp"
#include "../run_command.hpp"
#include "../svg_inspect.hpp"

using namespace conics;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// 1. Square side from the exact construction: |AG^2 - L y| <= 1e-9 L y.
Outcome exact_application_agreement() {
    Outcome o;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 100.0);
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 1000; ++i) {
        const double L = u(rng);
        const double y = u(rng);
        const double g = apply_exact(L, y).square_side_g;
        const double rel = std::abs(g * g - L * y) / (L * y);
        worst = std::max(worst, rel);
        o.require(rel <= 1e-9, "L=" + fmt(L) + " y=" + fmt(y) + " rel=" + fmt(rel));
    }
    const double dt = seconds_since(t0);
    o.require(dt < 1.0, "runtime " + fmt(dt) + " s");
    if (o.pass) o.detail = "max rel err " + fmt(worst) + ", " + fmt(dt) + " s";
    return o;
}

// 2. Deficient and excess constructions: |g^2 - (L y -+ lambda y^2)| <= 1e-9 max(1, L y).
Outcome inexact_application_agreement() {
    Outcome o;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uL(0.1, 100.0);
    std::uniform_real_distribution<double> ulam(0.1, 10.0);
    std::uniform_real_distribution<double> ufrac(0.0, 1.0);
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 1000; ++i) {
        const double L = uL(rng);
        const double lam = ulam(rng);
        const double y_def = (L / lam) * std::max(1e-6, std::min(1.0 - 1e-6, ufrac(rng)));
        const double y_exc = uL(rng);
        const double gd = apply_deficient(L, lam, y_def).square_side_g;
        const double gx = apply_excess(L, lam, y_exc).square_side_g;
        const double ed = std::abs(gd * gd - (L * y_def - lam * y_def * y_def)) / std::max(1.0, L * y_def);
        const double ex = std::abs(gx * gx - (L * y_exc + lam * y_exc * y_exc)) / std::max(1.0, L * y_exc);
        worst = std::max({worst, ed, ex});
        o.require(ed <= 1e-9, "deficient L=" + fmt(L) + " lambda=" + fmt(lam) + " y=" + fmt(y_def));
        o.require(ex <= 1e-9, "excess L=" + fmt(L) + " lambda=" + fmt(lam) + " y=" + fmt(y_exc));
    }
    const double dt = seconds_since(t0);
    o.require(dt < 1.0, "runtime " + fmt(dt) + " s");
    if (o.pass) o.detail = "max scaled err " + fmt(worst) + ", " + fmt(dt) + " s";
    return o;
}

// 3. Grid scan of 10^4 bases: maximum area L^2/(4 lambda) at the grid point nearest L/2.
Outcome max_area_scan() {
    Outcome o;
    for (auto [L, lam] : {std::pair{4.0, 1.0}, {2.0, 0.5}, {1.0, 4.0}}) {
        const auto bound = max_applicable_area(L, lam);
        constexpr int n = 10000;
        double best = -1.0;
        int best_i = 0;
        int nearest_i = 0;
        for (int i = 0; i <= n; ++i) {
            const double b = L * i / n;
            const double area = b * (L - b) / lam;
            if (area > best) {
                best = area;
                best_i = i;
            }
            if (std::abs(b - L / 2) < std::abs(L * nearest_i / n - L / 2)) nearest_i = i;
        }
        o.require(std::abs(best - bound.area) <= 1e-12 * bound.area,
                  "max " + fmt(best) + " vs " + fmt(bound.area));
        o.require(best_i == nearest_i, "argmax grid index " + std::to_string(best_i));
        o.require(bound.at_base == L / 2, "at_base");
    }
    return o;
}

// 4. Ellipse features.
Outcome ellipse_features() {
    Outcome o;
    const auto circle = conic_params(ConicKind::Ellipse, 2.0, 1.0);
    o.require(*circle.eccentricity == 0.0, "circle eccentricity");
    o.require(*circle.semi_axis_x == 1.0 && *circle.semi_axis_y == 1.0, "circle semi-axes");
    const auto e = conic_params(ConicKind::Ellipse, 4.0, 0.75);
    o.require(std::abs(*e.eccentricity - 0.5) <= 1e-12, "eccentricity " + fmt(*e.eccentricity));
    o.require(*e.major_axis == MajorAxis::AlongAD, "major axis placement");
    o.require(std::abs(*e.semi_axis_y - 8.0 / 3.0) <= 1e-12 && *e.semi_axis_y > *e.semi_axis_x,
              "semi-major L/(2 lambda) along AD");
    return o;
}

// 5. Hyperbola features and the asymptote approach.
Outcome hyperbola_features() {
    Outcome o;
    const auto h = conic_params(ConicKind::Hyperbola, 2.0, 1.0);
    const auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
    o.require(near(h.center->x, 0.0) && near(h.center->y, -1.0), "center");
    o.require(h.vertices.size() == 2 && near(h.vertices[0].y, 0.0) && near(h.vertices[1].y, -2.0), "vertices");
    o.require(near(h.asymptote_slopes->first, 1.0) && near(h.asymptote_slopes->second, -1.0), "asymptote slopes");
    o.require(near(*h.eccentricity, std::sqrt(2.0)), "eccentricity");

    // L = lambda = 1: asymptote y = -1/2 + x.
    double prev = std::numeric_limits<double>::infinity();
    for (double y : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}) {
        const auto p = sample_locus_at(ConicKind::Hyperbola, 1.0, 1.0, std::vector{y}).front();
        const double d = std::abs(p.x - p.y - 0.5) / std::sqrt(2.0);
        o.require(d < prev, "distance not decreasing at y=" + fmt(y));
        prev = d;
    }
    o.require(prev < 1e-5, "distance at 1e6 = " + fmt(prev));
    if (o.pass) o.detail = "asymptote distance at y=1e6: " + fmt(prev);
    return o;
}

// 6. Conic fit on construction samples matches the derived parameters.
Outcome oracle_equivalence() {
    Outcome o;
    double worst = 0.0;
    for (auto kind : {ConicKind::Parabola, ConicKind::Ellipse, ConicKind::Hyperbola}) {
        const std::optional<double> lam = kind == ConicKind::Parabola ? std::nullopt : std::optional{0.75};
        const double L = 2.0;
        const double top = kind == ConicKind::Ellipse ? L / *lam : 4.0;
        std::vector<double> ys;
        for (int i = 0; i < 8; ++i) ys.push_back(top * (0.05 + 0.9 * i / 7.0));
        std::vector<LocusPoint> upper;
        for (const auto& p : sample_locus_at(kind, L, lam, ys)) {
            if (p.branch == Branch::Upper) upper.push_back(p);
        }
        const auto fit = fit_conic_oracle(upper);
        const auto want = implicit_coefficients(conic_params(kind, L, lam));
        for (std::size_t i = 0; i < 6; ++i) {
            worst = std::max(worst, std::abs(fit[i] - want[i]));
            o.require(std::abs(fit[i] - want[i]) <= 1e-6,
                      std::string(to_string(kind)) + " coefficient " + std::to_string(i));
        }
    }
    if (o.pass) o.detail = "max coefficient diff " + fmt(worst);
    return o;
}

// 7. lambda -> 0 collapses ellipse and hyperbola onto the parabola.
Outcome degeneration() {
    Outcome o;
    std::vector<double> ys;
    for (int i = 0; i <= 200; ++i) ys.push_back(0.01 + 0.99 * i / 200.0);
    const auto par = sample_locus_at(ConicKind::Parabola, 1.0, std::nullopt, ys);
    const auto ell = sample_locus_at(ConicKind::Ellipse, 1.0, 1e-6, ys);
    const auto hyp = sample_locus_at(ConicKind::Hyperbola, 1.0, 1e-6, ys);
    double worst = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        worst = std::max({worst, std::abs(ell[i].x - par[i].x), std::abs(hyp[i].x - par[i].x)});
    }
    o.require(worst <= 1e-6, "max diff " + fmt(worst));
    if (o.pass) o.detail = "max diff " + fmt(worst);
    return o;
}

// 8. Serialized traces replay bit-exactly.
Outcome trace_replay() {
    Outcome o;
    for (const auto& r : {apply_exact(4.0, 1.0), apply_deficient(4.0, 1.0, 1.0), apply_excess(2.0, 1.0, 1.0)}) {
        const auto pts = replay_trace(parse_trace(serialize_trace(r.trace)));
        o.require(pts.size() == r.figure_points.size(), "point count");
        for (const auto& [label, p] : r.figure_points) {
            const auto it = pts.find(label);
            o.require(it != pts.end() && it->second.x == p.x && it->second.y == p.y,
                      std::string(to_string(r.spec.kind)) + " point " + label);
        }
    }
    return o;
}

// 9. `figure --which N` for N = 1..9.
Outcome figures() {
    Outcome o;
    for (int n = 1; n <= 9; ++n) {
        const auto out = (cli_run::scratch_dir() / ("figure" + std::to_string(n) + ".svg")).string();
        const auto r1 = cli_run::run("figure --which " + std::to_string(n) + " --out '" + out + "'");
        const auto first = cli_run::slurp(out);
        const auto r2 = cli_run::run("figure --which " + std::to_string(n) + " --out '" + out + "'");
        const auto second = cli_run::slurp(out);
        o.require(r1.status == 0 && r2.status == 0, "figure " + std::to_string(n) + " exit status");
        o.require(first == second && !first.empty(), "figure " + std::to_string(n) + " not byte-identical");
        try {
            const auto d = svg_inspect::parse(first);
            o.require(d.root.get<std::string>("svg.<xmlattr>.version") == "1.1", "SVG version");
            if (n == 9) {
                std::size_t inclined = 0;
                std::size_t conjugate = 0;
                for (const auto& e : d.drawn) {
                    if (e.tag != "line" || e.attr("stroke-dasharray").empty()) continue;
                    const bool horizontal = e.attr("y1") == e.attr("y2");
                    const bool vertical = e.attr("x1") == e.attr("x2");
                    if (!horizontal && !vertical) ++inclined;
                    if (horizontal && e.attr("class") == "conjugate-axis") ++conjugate;
                }
                o.require(inclined == 2, "figure 9 inclined dashed lines: " + std::to_string(inclined));
                o.require(conjugate == 1, "figure 9 conjugate axes: " + std::to_string(conjugate));
            }
        } catch (const std::exception& e) {
            o.require(false, "figure " + std::to_string(n) + " is not well-formed: " + e.what());
        }
    }
    return o;
}

// 10. `locus` -> `verify` round trip and the documented failures.
Outcome cli_round_trip() {
    Outcome o;
    const struct {
        const char* kind;
        const char* lambda;
    } cases[] = {{"parabola", ""}, {"ellipse", " --lambda 0.75"}, {"hyperbola", " --lambda 1.5"}};
    for (const auto& c : cases) {
        const auto csv = (cli_run::scratch_dir() / (std::string(c.kind) + "_acc.csv")).string();
        const std::string common = std::string(" --kind ") + c.kind + " --base 2" + c.lambda;
        const auto gen = cli_run::run("locus" + common + " --samples 200 --mirror --out '" + csv + "'");
        o.require(gen.status == 0, std::string(c.kind) + " locus exit " + std::to_string(gen.status));
        const auto ver = cli_run::run("verify --points '" + csv + "'" + common + " --tol 1e-9");
        o.require(ver.status == 0, std::string(c.kind) + " verify exit " + std::to_string(ver.status));
    }
    const auto infeasible = cli_run::run("solve --kind deficient --base 4 --lambda 1 --area 5");
    o.require(infeasible.status == 1 && infeasible.err.find("infeasible area") != std::string::npos,
              "infeasible-area request");
    const auto too_deep = cli_run::run("construct --kind deficient --base 4 --lambda 1 --height 5");
    o.require(too_deep.status == 1 && too_deep.err.find("deficiency exceeds base") != std::string::npos,
              "lambda*y >= L request");
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1  exact application: AG^2 = L y", exact_application_agreement},
        {"AC2  deficient/excess: g^2 = L y -+ lambda y^2", inexact_application_agreement},
        {"AC3  maximal deficient area L^2/(4 lambda) at L/2", max_area_scan},
        {"AC4  ellipse center, semi-axes, eccentricity", ellipse_features},
        {"AC5  hyperbola center, vertices, asymptotes, eccentricity", hyperbola_features},
        {"AC6  conic-fit oracle matches derived parameters", oracle_equivalence},
        {"AC7  lambda -> 0 degenerates to the parabola", degeneration},
        {"AC8  trace serialization replays bit-exactly", trace_replay},
        {"AC9  figures 1..9 well-formed, deterministic; figure 9 axes", figures},
        {"AC10 CLI locus -> verify round trip and error exits", cli_round_trip},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name;
        if (!o.detail.empty()) std::cout << "  (" << o.detail << ")";
        std::cout << '\n';
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
