#pragma once
// JSON form of BoundsReport and a structural check for it.

#include <json.hpp>

#include <string>

#include "covdens/partition.hpp"

namespace covdens {

inline constexpr int kReportDigits = 10;

inline nlohmann::json bounds_to_json(const BoundsReport& r) {
    return nlohmann::json{
        {"mode", mode_name(r.mode)},
        {"z_exp", r.z_exponent},
        {"q_index", r.q_index},
        {"upper", r.upper.to_labelled(kReportDigits)},
        {"lower", r.lower.to_labelled(kReportDigits)},
        {"lower_semantics", r.lower_semantics()},
        {"pairs", {{"w1", r.w1}, {"w2", r.w2}, {"w3", r.w3}}},
        {"elapsed_ms", r.elapsed.count()},
    };
}

/// Empty string when `j` has the bounds-report shape, else the first problem.
inline std::string check_bounds_json(const nlohmann::json& j) {
    if (!j.is_object()) return "not an object";
    for (const char* key : {"mode", "upper", "lower", "lower_semantics"})
        if (!j.contains(key) || !j[key].is_string()) return std::string("missing string ") + key;
    for (const char* key : {"z_exp", "q_index", "elapsed_ms"})
        if (!j.contains(key) || !j[key].is_number_integer()) return std::string("missing integer ") + key;
    if (j["mode"] != "abundant" && j["mode"] != "covering") return "bad mode";
    if (j["lower_semantics"] != "d(A) lower" && j["lower_semantics"] != "density of c'(n)>=2") return "bad lower_semantics";
    auto ends_with = [](const std::string& s, const std::string& t) {
        return s.size() >= t.size() && s.compare(s.size() - t.size(), t.size(), t) == 0;
    };
    if (!ends_with(j["upper"].get<std::string>(), " (upper)")) return "upper lacks direction";
    if (!ends_with(j["lower"].get<std::string>(), " (lower)")) return "lower lacks direction";
    if (!j.contains("pairs") || !j["pairs"].is_object()) return "missing pairs";
    for (const char* key : {"w1", "w2", "w3"})
        if (!j["pairs"].contains(key) || !j["pairs"][key].is_number_unsigned()) return std::string("missing pairs.") + key;
    return {};
}

/// Leading decimal of a labelled bound such as "0.2476 (upper)".
inline double labelled_value(const std::string& s) { return std::stod(s.substr(0, s.find(' '))); }

}  // namespace covdens
