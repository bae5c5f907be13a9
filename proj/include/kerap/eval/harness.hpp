#pragma once

#include <vector>

#include "kerap/eval/metrics.hpp"
#include "kerap/eval/report.hpp"
#include "kerap/pipeline.hpp"

namespace kerap::eval {

struct AggregateMetrics {
    std::size_t runs = 0;
    std::vector<double> acc_per_run;
    std::vector<double> f1_per_run;
    double acc_mean = 0.0;
    double acc_std = 0.0;  // sample std, denominator R-1; 0 when R = 1
    double f1_mean = 0.0;
    double f1_std = 0.0;
};

AggregateMetrics aggregate(const std::vector<RunMetrics>& per_run);

struct StrategyEvaluation {
    agents::Strategy strategy = agents::Strategy::Direct;
    AggregateMetrics aggregate;
    std::vector<RunMetrics> per_run;
    llm::CostReport cost;  // tokens/cost summed over all outcome usages, all runs
    std::size_t parse_fallbacks = 0;

    ReportRow report_row() const;
};

/// One full prediction pass over the cohort. Visits run with the configured
/// parallelism bound; outcomes come back in visit order.
std::vector<agents::PredictionOutcome> run_pass(PipelineContext& ctx,
                                                const cohortio::Cohort& cohort,
                                                agents::Strategy strategy);

/// R independent passes with metrics aggregated as mean and sample std. A
/// failed run discards the whole evaluation and surfaces the run index. Wall
/// time is zeroed under replay so reports stay byte-stable.
StrategyEvaluation evaluate(PipelineContext& ctx, const cohortio::Cohort& cohort,
                            agents::Strategy strategy, std::size_t repetitions);

struct FullReport {
    nlohmann::json json;
    std::string text;
};

/// Evaluates the strategies in order and renders both report forms. The CLI
/// and the fixture generator share this path so golden files stay byte-exact.
FullReport evaluate_to_report(PipelineContext& ctx, const cohortio::Cohort& cohort,
                              const std::vector<agents::Strategy>& strategies,
                              std::size_t repetitions);

}  // namespace kerap::eval
