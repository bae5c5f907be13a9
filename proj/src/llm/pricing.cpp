#include "kerap/llm/pricing.hpp"

#include <fstream>

#include "json.hpp"
#include "kerap/util/errors.hpp"

namespace kerap::llm {

PricingTable PricingTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open pricing file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 0, std::string("invalid pricing JSON: ") + e.what());
    }
    std::map<std::string, ModelPricing> models;
    for (const auto& [model, entry] : doc.items()) {
        ModelPricing pricing;
        pricing.input_per_1m = entry.at("input_per_1m").get<double>();
        pricing.output_per_1m = entry.at("output_per_1m").get<double>();
        if (pricing.input_per_1m < 0 || pricing.output_per_1m < 0) {
            throw ConfigError("negative price for model " + model);
        }
        models.emplace(model, pricing);
    }
    return PricingTable(std::move(models));
}

const ModelPricing& PricingTable::lookup(const std::string& model) const {
    auto it = models_.find(model);
    if (it == models_.end()) throw ConfigError("no pricing entry for model '" + model + "'");
    return it->second;
}

CostReport meter(std::span<const TokenUsage> usages, const PricingTable& pricing,
                 const std::string& model, double wall_time_s) {
    const auto& price = pricing.lookup(model);
    CostReport report;
    for (const auto& usage : usages) report.usage += usage;
    report.token_cost = static_cast<double>(report.usage.prompt_tokens) * price.input_per_1m / 1e6 +
                        static_cast<double>(report.usage.completion_tokens) *
                            price.output_per_1m / 1e6;
    report.wall_time_s = wall_time_s;
    return report;
}

}  // namespace kerap::llm
