#include "kerap/eval/report.hpp"

#include <cstdio>

#include "kerap/util/errors.hpp"

namespace kerap::eval {

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

// Column width in characters, not bytes ("±" is a two-byte single column).
std::size_t visible_width(const std::string& s) {
    std::size_t w = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) ++w;
    }
    return w;
}

std::string pad(const std::string& s, std::size_t width) {
    std::string out = s;
    const auto v = visible_width(s);
    if (v < width) out.append(width - v, ' ');
    return out;
}

}  // namespace

std::string format_mean_std(double mean, double sample_std) {
    return fixed(mean * 100.0, 2) + "±" + fixed(sample_std * 100.0, 2);
}

nlohmann::json report_json(const std::string& disease, std::size_t visits, std::size_t labeled,
                           const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw InvalidInputError("report needs at least one evaluated strategy");
    nlohmann::json doc;
    doc["disease"] = disease;
    doc["visits"] = visits;
    doc["labeled"] = labeled;
    doc["std_definition"] = "sample standard deviation (denominator R-1; 0 when R=1)";
    auto& strategies = doc["strategies"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json entry;
        entry["strategy"] = row.strategy;
        entry["runs"] = row.runs;
        entry["accuracy"] = {{"mean", row.acc_mean},
                             {"std", row.acc_std},
                             {"formatted", format_mean_std(row.acc_mean, row.acc_std)}};
        entry["f1_weighted"] = {{"mean", row.f1_mean},
                                {"std", row.f1_std},
                                {"formatted", format_mean_std(row.f1_mean, row.f1_std)}};
        entry["total_tokens"] = row.total_tokens;
        entry["token_cost"] = row.token_cost;
        entry["wall_time_s"] = row.wall_time_s;
        entry["parse_fallbacks"] = row.parse_fallbacks;
        strategies.push_back(std::move(entry));
    }
    return doc;
}

std::string report_text(const std::string& disease, std::size_t visits, std::size_t labeled,
                        const std::vector<ReportRow>& rows) {
    if (rows.empty()) throw InvalidInputError("report needs at least one evaluated strategy");

    const std::vector<std::string> headers = {"Strategy", "ACC (%)",  "F1 (%)",    "Tokens",
                                              "Cost ($)", "Time (s)", "Fallbacks", "Runs"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        cells.push_back({row.strategy, format_mean_std(row.acc_mean, row.acc_std),
                         format_mean_std(row.f1_mean, row.f1_std),
                         std::to_string(row.total_tokens), fixed(row.token_cost, 4),
                         fixed(row.wall_time_s, 1), std::to_string(row.parse_fallbacks),
                         std::to_string(row.runs)});
    }

    std::vector<std::size_t> widths;
    for (std::size_t col = 0; col < headers.size(); ++col) {
        std::size_t w = visible_width(headers[col]);
        for (const auto& row : cells) w = std::max(w, visible_width(row[col]));
        widths.push_back(w + 2);
    }

    std::string out = "Zero-shot diagnosis prediction: \"" + disease + "\" (" +
                      std::to_string(visits) + " visits, " + std::to_string(labeled) +
                      " labeled)\n\n";
    for (std::size_t col = 0; col < headers.size(); ++col) {
        out += pad(headers[col], widths[col]);
    }
    out += "\n";
    for (const auto& row : cells) {
        for (std::size_t col = 0; col < row.size(); ++col) {
            out += pad(row[col], widths[col]);
        }
        out += "\n";
    }
    out += "\nstd is sample standard deviation (denominator R-1; 0 when R=1).\n";
    return out;
}

}  // namespace kerap::eval
