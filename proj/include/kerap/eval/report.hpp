#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace kerap::eval {

struct ReportRow {
    std::string strategy;
    std::size_t runs = 0;
    double acc_mean = 0.0;
    double acc_std = 0.0;
    double f1_mean = 0.0;
    double f1_std = 0.0;
    std::int64_t total_tokens = 0;
    double token_cost = 0.0;
    double wall_time_s = 0.0;
    std::size_t parse_fallbacks = 0;
};

/// (0.724415, 0.0071) -> "72.44±0.71": fractions rendered as percentages,
/// two decimals, mean±std.
std::string format_mean_std(double mean, double sample_std);

/// Machine-readable report. Deterministic: keys sorted, no paths, no clock
/// values beyond the wall_time_s handed in by the caller.
nlohmann::json report_json(const std::string& disease, std::size_t visits, std::size_t labeled,
                           const std::vector<ReportRow>& rows);

/// Aligned text table over the same rows.
std::string report_text(const std::string& disease, std::size_t visits, std::size_t labeled,
                        const std::vector<ReportRow>& rows);

}  // namespace kerap::eval
