#pragma once

#include <map>
#include <span>
#include <string>

#include "kerap/llm/types.hpp"

namespace kerap::llm {

struct ModelPricing {
    double input_per_1m = 0.0;   // currency per 1M prompt tokens
    double output_per_1m = 0.0;  // currency per 1M completion tokens
};

class PricingTable {
public:
    PricingTable() = default;
    explicit PricingTable(std::map<std::string, ModelPricing> models)
        : models_(std::move(models)) {}

    static PricingTable load(const std::string& path);

    /// Throws ConfigError when the model has no price entry.
    const ModelPricing& lookup(const std::string& model) const;
    bool has(const std::string& model) const { return models_.count(model) > 0; }

private:
    std::map<std::string, ModelPricing> models_;
};

struct CostReport {
    TokenUsage usage;
    double token_cost = 0.0;
    double wall_time_s = 0.0;
};

/// Sums the usage stream and prices it:
/// cost = sum(prompt_tokens)*input/1e6 + sum(completion_tokens)*output/1e6.
/// Additive and order-independent; wall time is supplied by the caller's
/// harness clock.
CostReport meter(std::span<const TokenUsage> usages, const PricingTable& pricing,
                 const std::string& model, double wall_time_s = 0.0);

}  // namespace kerap::llm
