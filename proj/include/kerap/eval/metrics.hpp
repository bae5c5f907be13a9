#pragma once

#include <cstdint>
#include <span>

#include "kerap/agents/prediction.hpp"
#include "kerap/cohort/cohort.hpp"
#include "kerap/llm/types.hpp"

namespace kerap::eval {

struct Confusion {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
    bool operator==(const Confusion&) const = default;
};

struct RunMetrics {
    double accuracy = 0.0;
    double f1_weighted = 0.0;
    Confusion confusion;
    llm::TokenUsage usage;          // summed over all outcomes in the run
    double wall_time_s = 0.0;
    std::size_t unlabeled_skipped = 0;
    std::size_t parse_fallbacks = 0;
};

/// Per-class F1 with zero-denominator precision/recall/F1 defined as 0.
double f1_binary(std::int64_t tp, std::int64_t fp, std::int64_t fn);

/// accuracy = (tp+tn)/N over labeled visits; weighted F1 = support-weighted
/// mean of the per-class F1 scores (YES class and NO class). Every labeled
/// visit must have exactly one outcome; unlabeled visits are skipped and
/// counted.
RunMetrics score(std::span<const agents::PredictionOutcome> outcomes,
                 const cohortio::Cohort& cohort);

}  // namespace kerap::eval
