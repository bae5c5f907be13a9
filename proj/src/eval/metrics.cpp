#include "kerap/eval/metrics.hpp"

#include <unordered_map>

#include "kerap/util/errors.hpp"

namespace kerap::eval {

double f1_binary(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    const double precision = (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp);
    const double recall = (tp + fn) == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

RunMetrics score(std::span<const agents::PredictionOutcome> outcomes,
                 const cohortio::Cohort& cohort) {
    std::unordered_map<std::string, const agents::PredictionOutcome*> by_visit;
    by_visit.reserve(outcomes.size());
    for (const auto& outcome : outcomes) {
        if (!by_visit.emplace(outcome.visit_id, &outcome).second) {
            throw InvalidInputError("duplicate outcome for visit '" + outcome.visit_id + "'");
        }
    }

    RunMetrics metrics;
    for (const auto& outcome : outcomes) {
        metrics.usage += outcome.usage;
        metrics.parse_fallbacks += static_cast<std::size_t>(outcome.parse_fallbacks);
    }

    for (const auto& visit : cohort.visits) {
        if (!visit.label.has_value()) {
            ++metrics.unlabeled_skipped;
            continue;
        }
        auto it = by_visit.find(visit.visit_id);
        if (it == by_visit.end()) {
            throw InvalidInputError("no outcome for labeled visit '" + visit.visit_id + "'");
        }
        const bool predicted_yes = it->second->final_verdict == agents::Verdict::Yes;
        if (*visit.label) {
            predicted_yes ? ++metrics.confusion.tp : ++metrics.confusion.fn;
        } else {
            predicted_yes ? ++metrics.confusion.fp : ++metrics.confusion.tn;
        }
    }

    const auto& c = metrics.confusion;
    const std::int64_t n = c.total();
    if (n > 0) {
        metrics.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
        const double f1_pos = f1_binary(c.tp, c.fp, c.fn);
        const double f1_neg = f1_binary(c.tn, c.fn, c.fp);
        const auto n_pos = static_cast<double>(c.tp + c.fn);
        const auto n_neg = static_cast<double>(c.tn + c.fp);
        metrics.f1_weighted = (n_pos * f1_pos + n_neg * f1_neg) / static_cast<double>(n);
    }
    return metrics;
}

}  // namespace kerap::eval
