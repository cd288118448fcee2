#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace conics {

// Shortest decimal text that parses back to the same double.
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) {
        return "nan";
    }
    return {buf, res.ptr};
}

// Fixed-point text with `digits` decimals; "-0.000" is normalized to "0.000".
inline std::string format_fixed(double v, int digits) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    std::string s{buf, res.ptr};
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

} // namespace conics
