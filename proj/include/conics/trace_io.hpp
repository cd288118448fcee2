#pragma once

// JSON form of a ConstructionTrace:
//
//   {"initial": [{"label": "A", "x": 0.0, "y": 0.0}, ...],
//    "steps":   [{"op": "Extend", "inputs": ["A", "B"], "output": "E",
//                 "citation": "I.3", "length": 1.0}, ...]}
//
// "length" appears only on Extend and MarkSegment steps. Numbers are written
// with round-trip precision so a parsed trace replays bit-exactly.

#include <string>

#include <nlohmann/json.hpp>

#include "conics/constructions.hpp"

namespace conics {

inline nlohmann::json point_to_json(const Point& p) {
    nlohmann::json j;
    if (p.label) j["label"] = *p.label;
    j["x"] = p.x;
    j["y"] = p.y;
    return j;
}

inline nlohmann::json trace_to_json(const ConstructionTrace& trace) {
    nlohmann::json j;
    j["initial"] = nlohmann::json::array();
    for (const auto& p : trace.initial) {
        j["initial"].push_back(point_to_json(p));
    }
    j["steps"] = nlohmann::json::array();
    for (const auto& s : trace.steps) {
        nlohmann::json js;
        js["op"] = std::string(to_string(s.op));
        js["inputs"] = s.inputs;
        js["output"] = s.output;
        js["citation"] = s.citation;
        if (s.length) js["length"] = *s.length;
        j["steps"].push_back(std::move(js));
    }
    return j;
}

inline ConstructionTrace trace_from_json(const nlohmann::json& j) {
    try {
        ConstructionTrace trace;
        for (const auto& jp : j.at("initial")) {
            Point p{jp.at("x").get<double>(), jp.at("y").get<double>()};
            p.label = jp.at("label").get<std::string>();
            trace.initial.push_back(std::move(p));
        }
        for (const auto& js : j.at("steps")) {
            const auto name = js.at("op").get<std::string>();
            const auto op = step_op_from_string(name);
            if (!op) {
                throw MalformedTrace("unknown construction step op '" + name + "'");
            }
            ConstructionStep s;
            s.op = *op;
            s.inputs = js.at("inputs").get<std::vector<std::string>>();
            s.output = js.at("output").get<std::string>();
            s.citation = js.at("citation").get<std::string>();
            if (js.contains("length")) s.length = js.at("length").get<double>();
            trace.steps.push_back(std::move(s));
        }
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedTrace(std::string("trace JSON: ") + e.what());
    }
}

inline std::string serialize_trace(const ConstructionTrace& trace) { return trace_to_json(trace).dump(2); }

inline ConstructionTrace parse_trace(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedTrace(std::string("trace JSON: ") + e.what());
    }
    return trace_from_json(j);
}

} // namespace conics
