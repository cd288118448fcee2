#pragma once

// CSV export of locus points (header `x,y,branch`, shortest round-trip
// decimals) and JSON export of ConicSpec and ApplicationResult summaries.

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "conics/constructions.hpp"
#include "conics/format.hpp"
#include "conics/locus.hpp"
#include "conics/trace_io.hpp"

namespace conics {

inline void write_locus_csv(std::ostream& os, std::span<const LocusPoint> points) {
    os << "x,y,branch\n";
    for (const auto& p : points) {
        os << format_number(p.x) << ',' << format_number(p.y) << ',' << to_string(p.branch) << '\n';
    }
}

inline std::string locus_csv(std::span<const LocusPoint> points) {
    std::ostringstream os;
    write_locus_csv(os, points);
    return os.str();
}

namespace detail {

inline double parse_csv_number(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        throw FormatError("locus CSV line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

} // namespace detail

inline std::vector<LocusPoint> read_locus_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("locus CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y,branch") throw FormatError("locus CSV: expected header 'x,y,branch', got '" + line + "'");

    std::vector<LocusPoint> out;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
            throw FormatError("locus CSV line " + std::to_string(line_no) + ": expected 3 fields");
        }
        const std::string_view sv{line};
        LocusPoint p;
        p.x = detail::parse_csv_number(sv.substr(0, c1), line_no);
        p.y = detail::parse_csv_number(sv.substr(c1 + 1, c2 - c1 - 1), line_no);
        const auto branch = sv.substr(c2 + 1);
        if (branch == "Upper") {
            p.branch = Branch::Upper;
        } else if (branch == "Lower") {
            p.branch = Branch::Lower;
        } else {
            throw FormatError("locus CSV line " + std::to_string(line_no) + ": unknown branch '" +
                              std::string(branch) + "'");
        }
        out.push_back(p);
    }
    return out;
}

inline nlohmann::json conic_spec_to_json(const ConicSpec& s) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(s.kind));
    j["base_L"] = s.base_L;
    if (s.lambda) j["lambda"] = *s.lambda;
    if (s.coefficient) j["coefficient"] = *s.coefficient;
    if (s.center) j["center"] = {{"x", s.center->x}, {"y", s.center->y}};
    if (s.semi_axis_x) j["semi_axis_x"] = *s.semi_axis_x;
    if (s.semi_axis_y) j["semi_axis_y"] = *s.semi_axis_y;
    if (s.major_axis) j["major_axis"] = std::string(to_string(*s.major_axis));
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : s.vertices) j["vertices"].push_back(point_to_json(v));
    if (s.eccentricity) j["eccentricity"] = *s.eccentricity;
    if (s.asymptote_slopes) {
        j["asymptote_slopes"] = {s.asymptote_slopes->first, s.asymptote_slopes->second};
    }
    if (s.conjugate_axis_y) j["conjugate_axis_y"] = *s.conjugate_axis_y;
    return j;
}

inline nlohmann::json application_summary_json(const ApplicationResult& r) {
    nlohmann::json j;
    j["kind"] = std::string(to_string(r.spec.kind));
    j["base_L"] = r.spec.base_L;
    if (r.spec.lambda) j["lambda"] = *r.spec.lambda;
    j["height_y"] = r.spec.height_y;
    j["rect_base_b"] = r.rect_base_b;
    j["area_X"] = r.area_X;
    j["square_side_g"] = r.square_side_g;
    j["J"] = {{"x", r.J.x}, {"y", r.J.y}};
    nlohmann::json pts = nlohmann::json::object();
    for (const auto& [label, p] : r.figure_points) pts[label] = {{"x", p.x}, {"y", p.y}};
    j["figure_points"] = std::move(pts);
    return j;
}

} // namespace conics
