#include "contextus/report.hpp"

#include "contextus/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <unistd.h>

namespace contextus::cli {

ColorMode color_mode_from_env() {
    const char* env = std::getenv("CONTEXTUS_COLOR");
    if (!env) return ColorMode::automatic;
    std::string v(env);
    if (v == "always") return ColorMode::always;
    if (v == "never") return ColorMode::never;
    return ColorMode::automatic;
}

bool is_known_verdict(const std::string& verdict) {
    static const char* known[] = {"CONSISTENT",    "INCONSISTENT",  "FEASIBLE",
                                  "INFEASIBLE",    "NONCONTEXTUAL", "PROBABILISTIC",
                                  "POSSIBILISTIC", "STRONG",        "OK",
                                  "VIOLATION"};
    for (const char* k : known)
        if (verdict == k) return true;
    return false;
}

namespace {

bool use_color(ColorMode mode) {
    switch (mode) {
        case ColorMode::always: return true;
        case ColorMode::never: return false;
        case ColorMode::automatic: return isatty(STDOUT_FILENO) != 0;
    }
    return false;
}

bool is_good_verdict(const std::string& v) {
    return v == "OK" || v == "CONSISTENT" || v == "FEASIBLE" || v == "NONCONTEXTUAL";
}

} // namespace

std::string render_text(const Report& report, ColorMode mode) {
    if (!is_known_verdict(report.verdict))
        throw Error("internal: unknown verdict " + report.verdict);
    std::string out = report.title + "\n";
    out += std::string(report.title.size(), '=') + "\n";
    for (const auto& s : report.sections) {
        out += s;
        if (!s.empty() && s.back() != '\n') out += "\n";
    }
    std::string verdict = report.verdict;
    if (use_color(mode)) {
        const char* code = is_good_verdict(report.verdict) ? "\033[32m" : "\033[31m";
        verdict = std::string(code) + verdict + "\033[0m";
    }
    out += "VERDICT: " + verdict + "\n";
    return out;
}

std::string render_json(const Report& report) {
    nlohmann::ordered_json doc;
    doc["title"] = report.title;
    doc["verdict"] = report.verdict;
    nlohmann::ordered_json summary;
    for (const auto& [k, v] : report.summary) summary[k] = v;
    doc["summary"] = summary;
    return doc.dump(2) + "\n";
}

} // namespace contextus::cli
