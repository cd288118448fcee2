// conics: command-line front end for the application-of-areas constructions.
//
// Exit status: 0 success, 1 usage or domain error, 2 verification failure.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "conics/conics.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFailed = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, conics::ApplicationKind> kApplicationKinds{
    {"exact", conics::ApplicationKind::Exact},
    {"deficient", conics::ApplicationKind::Deficient},
    {"excess", conics::ApplicationKind::Excess},
};

const std::map<std::string, conics::ConicKind> kConicKinds{
    {"parabola", conics::ConicKind::Parabola},
    {"ellipse", conics::ConicKind::Ellipse},
    {"hyperbola", conics::ConicKind::Hyperbola},
};

// --lambda is required for the lambda-bearing kinds and rejected otherwise.
std::optional<double> lambda_for(bool takes_lambda, const std::string& kind, const std::optional<double>& lambda) {
    if (!takes_lambda && lambda) throw UsageError("--lambda is not accepted with --kind " + kind);
    if (takes_lambda && !lambda) throw UsageError("--lambda is required with --kind " + kind);
    return lambda;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw conics::FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conics by the application of areas: constructions, loci, parameters and figures"};
    app.require_subcommand(1);

    std::string kind;
    double base = 0.0;
    std::optional<double> lambda;
    double height = 0.0;
    double area = 0.0;
    std::string trace_path;
    std::string svg_path;
    std::string out_path;
    std::string points_path;
    std::optional<double> y_min;
    std::optional<double> y_max;
    int samples = 0;
    bool with_mirror = false;
    double tol = 1e-9;
    int which = 0;

    auto app_kind_check = CLI::IsMember({"exact", "deficient", "excess"});
    auto conic_kind_check = CLI::IsMember({"parabola", "ellipse", "hyperbola"});

    auto* construct = app.add_subcommand("construct", "Run one application and print its summary as JSON");
    construct->add_option("--kind", kind, "exact|deficient|excess")->required()->check(app_kind_check);
    construct->add_option("--base", base, "Length L of AB")->required();
    construct->add_option("--lambda", lambda, "Side ratio of the similar figure (width/height)");
    construct->add_option("--height", height, "Rectangle height AD")->required();
    construct->add_option("--trace", trace_path, "Write the construction trace (JSON) here");
    construct->add_option("--svg", svg_path, "Write the construction diagram (SVG) here");

    auto* solve = app.add_subcommand("solve", "Heights at which an application has the given area");
    solve->add_option("--kind", kind, "exact|deficient|excess")->required()->check(app_kind_check);
    solve->add_option("--base", base, "Length L of AB")->required();
    solve->add_option("--lambda", lambda, "Side ratio of the similar figure");
    solve->add_option("--area", area, "Applied area")->required();

    auto* locus = app.add_subcommand("locus", "Sample the locus of J and write it as CSV");
    locus->add_option("--kind", kind, "parabola|ellipse|hyperbola")->required()->check(conic_kind_check);
    locus->add_option("--base", base, "Length L of AB")->required();
    locus->add_option("--lambda", lambda, "Side ratio of the similar figure");
    locus->add_option("--y-min", y_min, "Lowest height (default 0)");
    locus->add_option("--y-max", y_max, "Highest height (default L/lambda for ellipses, L otherwise)");
    locus->add_option("--samples", samples, "Number of heights")->required()->check(CLI::Range(2, 100000000));
    locus->add_option("--out", out_path, "CSV output path")->required();
    locus->add_flag("--mirror", with_mirror, "Also emit the mirror images J'(-x, y)");

    auto* params = app.add_subcommand("params", "Print the conic's parameters as JSON");
    params->add_option("--kind", kind, "parabola|ellipse|hyperbola")->required()->check(conic_kind_check);
    params->add_option("--base", base, "Length L of AB")->required();
    params->add_option("--lambda", lambda, "Side ratio of the similar figure");

    auto* maxarea = app.add_subcommand("maxarea", "Largest area a deficient application can take");
    maxarea->add_option("--base", base, "Length L of AB")->required();
    maxarea->add_option("--lambda", lambda, "Side ratio of the similar figure")->required();

    auto* verify = app.add_subcommand("verify", "Check locus CSV points against the conic's equation");
    verify->add_option("--points", points_path, "CSV produced by `locus`")->required();
    verify->add_option("--kind", kind, "parabola|ellipse|hyperbola")->required()->check(conic_kind_check);
    verify->add_option("--base", base, "Length L of AB")->required();
    verify->add_option("--lambda", lambda, "Side ratio of the similar figure");
    verify->add_option("--tol", tol, "Relative tolerance")->required();

    auto* figure = app.add_subcommand("figure", "Write one of the nine bundled figures as SVG");
    figure->add_option("--which", which, "Figure number 1..9")->required();
    figure->add_option("--out", out_path, "SVG output path")->required();

    auto* replay = app.add_subcommand("replay", "Replay a trace file and print the resulting points as JSON");
    replay->add_option("--trace", trace_path, "Trace JSON written by `construct --trace`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e);
            return kOk;
        }
        std::cerr << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    }

    try {
        if (*construct) {
            const auto k = kApplicationKinds.at(kind);
            const auto lam = lambda_for(k != conics::ApplicationKind::Exact, kind, lambda);
            const auto r = conics::apply({k, base, lam, height});
            if (!trace_path.empty()) write_file(trace_path, conics::serialize_trace(r.trace) + "\n");
            if (!svg_path.empty()) write_file(svg_path, conics::render_svg(conics::scene_from_application(r)));
            print_json(conics::application_summary_json(r));
        } else if (*solve) {
            const auto k = kApplicationKinds.at(kind);
            const auto lam = lambda_for(k != conics::ApplicationKind::Exact, kind, lambda);
            print_json({{"heights", conics::solve_height_for_area(k, base, lam, area)}});
        } else if (*locus) {
            const auto k = kConicKinds.at(kind);
            const auto lam = lambda_for(k != conics::ConicKind::Parabola, kind, lambda);
            if (!(base > 0.0)) throw conics::DomainError("base L must be positive");
            double hi = base;
            if (k == conics::ConicKind::Ellipse && lam && *lam > 0.0) hi = base / *lam;
            const conics::SampleRange range{y_min.value_or(0.0), y_max.value_or(hi), samples};
            auto pts = conics::sample_locus(k, base, lam, range);
            if (with_mirror) pts = conics::mirror(pts);
            write_file(out_path, conics::locus_csv(pts));
        } else if (*params) {
            const auto k = kConicKinds.at(kind);
            const auto lam = lambda_for(k != conics::ConicKind::Parabola, kind, lambda);
            print_json(conics::conic_spec_to_json(conics::conic_params(k, base, lam)));
        } else if (*maxarea) {
            const auto bound = conics::max_applicable_area(base, *lambda);
            print_json({{"area", bound.area}, {"at_base", bound.at_base}});
        } else if (*verify) {
            const auto k = kConicKinds.at(kind);
            const auto lam = lambda_for(k != conics::ConicKind::Parabola, kind, lambda);
            std::istringstream in(read_file(points_path));
            const auto pts = conics::read_locus_csv(in);
            const auto rep = conics::verify_residuals(pts, k, base, lam, tol);
            nlohmann::json j{{"pass", rep.pass},
                             {"points", pts.size()},
                             {"max_residual", rep.max_residual},
                             {"max_standard_residual", rep.max_standard_residual}};
            if (rep.worst_point) {
                j["worst_point"] = {{"x", rep.worst_point->x},
                                    {"y", rep.worst_point->y},
                                    {"branch", std::string(conics::to_string(rep.worst_point->branch))}};
            }
            print_json(j);
            return rep.pass ? kOk : kVerifyFailed;
        } else if (*figure) {
            write_file(out_path, conics::figure_svg(which));
        } else if (*replay) {
            const auto pts = conics::replay_trace(conics::parse_trace(read_file(trace_path)));
            nlohmann::json j = nlohmann::json::object();
            for (const auto& [label, p] : pts) j[label] = {{"x", p.x}, {"y", p.y}};
            print_json(j);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kOk;
}
