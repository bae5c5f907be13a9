#include "kerap/eval/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "kerap/util/errors.hpp"
#include "kerap/util/log.hpp"

namespace kerap::eval {

AggregateMetrics aggregate(const std::vector<RunMetrics>& per_run) {
    if (per_run.empty()) throw InvalidInputError("aggregate needs at least one run");
    AggregateMetrics agg;
    agg.runs = per_run.size();
    for (const auto& run : per_run) {
        agg.acc_per_run.push_back(run.accuracy);
        agg.f1_per_run.push_back(run.f1_weighted);
    }
    auto mean = [](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        return sum / static_cast<double>(xs.size());
    };
    auto sample_std = [&](const std::vector<double>& xs, double mu) {
        if (xs.size() < 2) return 0.0;
        double sq = 0.0;
        for (double x : xs) sq += (x - mu) * (x - mu);
        return std::sqrt(sq / static_cast<double>(xs.size() - 1));
    };
    agg.acc_mean = mean(agg.acc_per_run);
    agg.acc_std = sample_std(agg.acc_per_run, agg.acc_mean);
    agg.f1_mean = mean(agg.f1_per_run);
    agg.f1_std = sample_std(agg.f1_per_run, agg.f1_mean);
    return agg;
}

ReportRow StrategyEvaluation::report_row() const {
    ReportRow row;
    row.strategy = agents::to_string(strategy);
    row.runs = aggregate.runs;
    row.acc_mean = aggregate.acc_mean;
    row.acc_std = aggregate.acc_std;
    row.f1_mean = aggregate.f1_mean;
    row.f1_std = aggregate.f1_std;
    row.total_tokens = cost.usage.total_tokens;
    row.token_cost = cost.token_cost;
    row.wall_time_s = cost.wall_time_s;
    row.parse_fallbacks = parse_fallbacks;
    return row;
}

std::vector<agents::PredictionOutcome> run_pass(PipelineContext& ctx,
                                                const cohortio::Cohort& cohort,
                                                agents::Strategy strategy) {
    const agents::KnowledgeBundle* bundle_ptr = nullptr;
    agents::KnowledgeBundle bundle;
    if (agents::uses_kg(strategy)) {
        bundle = ctx.knowledge_for(cohort.disease).second;
        bundle_ptr = &bundle;
    }

    const auto prediction_cfg = ctx.prediction_config();
    const auto n = cohort.visits.size();
    std::vector<agents::PredictionOutcome> outcomes(n);

    const auto workers =
        std::max<std::size_t>(1, std::min<std::size_t>(ctx.config().parallelism, n ? n : 1));
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error) return;
            }
            try {
                outcomes[i] = agents::predict(ctx.gateway(), cohort.visits[i], cohort.disease,
                                              bundle_ptr, strategy, prediction_cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return outcomes;
}

StrategyEvaluation evaluate(PipelineContext& ctx, const cohortio::Cohort& cohort,
                            agents::Strategy strategy, std::size_t repetitions) {
    if (repetitions < 1) throw InvalidInputError("repetitions must be >= 1");

    StrategyEvaluation evaluation;
    evaluation.strategy = strategy;

    std::vector<llm::TokenUsage> usages;
    double wall_time_s = 0.0;
    for (std::size_t run = 0; run < repetitions; ++run) {
        const auto started = std::chrono::steady_clock::now();
        std::vector<agents::PredictionOutcome> outcomes;
        try {
            outcomes = run_pass(ctx, cohort, strategy);
        } catch (const std::exception& e) {
            throw Error("run " + std::to_string(run + 1) + " of " +
                        std::to_string(repetitions) + " (" + agents::to_string(strategy) +
                        ") failed: " + e.what());
        }
        auto metrics = score(outcomes, cohort);
        metrics.wall_time_s =
            ctx.deterministic_timing()
                ? 0.0
                : std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                      .count();
        wall_time_s += metrics.wall_time_s;
        evaluation.parse_fallbacks += metrics.parse_fallbacks;
        usages.push_back(metrics.usage);
        evaluation.per_run.push_back(std::move(metrics));
        util::log_info("run complete",
                       {{"strategy", agents::to_string(strategy)},
                        {"run", std::to_string(run + 1)},
                        {"accuracy", std::to_string(evaluation.per_run.back().accuracy)}});
    }

    evaluation.aggregate = aggregate(evaluation.per_run);
    evaluation.cost = llm::meter(usages, ctx.pricing(), ctx.config().model, wall_time_s);
    return evaluation;
}

FullReport evaluate_to_report(PipelineContext& ctx, const cohortio::Cohort& cohort,
                              const std::vector<agents::Strategy>& strategies,
                              std::size_t repetitions) {
    std::vector<ReportRow> rows;
    for (const auto strategy : strategies) {
        rows.push_back(evaluate(ctx, cohort, strategy, repetitions).report_row());
    }
    FullReport report;
    report.json = report_json(cohort.disease, cohort.visits.size(), cohort.labeled_count(), rows);
    report.json["kg_tokens"] = ctx.kg_usage().total_tokens;
    report.text = report_text(cohort.disease, cohort.visits.size(), cohort.labeled_count(), rows);
    return report;
}

}  // namespace kerap::eval
