#pragma once

#include <string>
#include <utility>
#include <vector>

namespace contextus::cli {

// Plain-text report with a one-line verdict and a machine-readable summary.
struct Report {
    std::string title;
    std::string verdict; // CONSISTENT, INCONSISTENT, FEASIBLE, INFEASIBLE,
                         // NONCONTEXTUAL, PROBABILISTIC, POSSIBILISTIC,
                         // STRONG, OK, VIOLATION
    std::vector<std::string> sections; // preformatted blocks
    std::vector<std::pair<std::string, std::string>> summary; // ordered key/value

    void add_summary(std::string key, std::string value) {
        summary.emplace_back(std::move(key), std::move(value));
    }
};

enum class ColorMode { automatic, always, never };
ColorMode color_mode_from_env();

std::string render_text(const Report& report, ColorMode mode);
std::string render_json(const Report& report);

bool is_known_verdict(const std::string& verdict);

} // namespace contextus::cli
