// Acceptance suite: one criterion per check, one PASS/FAIL line each, exit
// nonzero if anything fails. Runs against the committed fixtures plus the
// built CLI binary.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "kerap/eval/harness.hpp"
#include "kerap/kg/lexicon.hpp"
#include "kerap/pipeline.hpp"
#include "kerap/prompts/templates.hpp"
#include "kerap/util/log.hpp"
#include "kerap/util/strings.hpp"
#include "test_support.hpp"

using namespace kerap;
using kerap::testing::TempDir;
using kerap::testing::fixtures_dir;
using kerap::testing::read_file;

namespace {

struct SkipCriterion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

int run_command(const std::string& command) {
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string config_path() { return (fixtures_dir() / "config_replay.json").string(); }

PipelineContext replay_context() { return PipelineContext(PipelineConfig::load(config_path())); }

// --- Criterion: replay determinism --------------------------------------

void check_replay_determinism() {
    TempDir dir("acc_determinism");
    const auto cohort = (fixtures_dir() / "cohort_main.jsonl").string();
    const auto started = std::chrono::steady_clock::now();
    std::vector<std::string> reports;
    for (int i = 0; i < 3; ++i) {
        const auto out = dir.file("run" + std::to_string(i));
        const std::string command = std::string(KERAP_CLI_PATH) + " evaluate --config " +
                                    config_path() + " --cohort " + cohort +
                                    " --strategy all --runs 5 --out " + out.string() +
                                    " >/dev/null 2>/dev/null";
        require(run_command(command) == 0, "evaluate run " + std::to_string(i) + " failed");
        reports.push_back(read_file(out / "report.json"));
        require(!reports.back().empty(), "report.json missing on run " + std::to_string(i));
    }
    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    require(reports[0] == reports[1] && reports[1] == reports[2],
            "report.json differs across consecutive runs");
    const auto golden = read_file(fixtures_dir() / "golden" / "report.json");
    require(reports[0] == golden, "report.json differs from the committed golden file");
    require(elapsed < 60.0,
            "three replay evaluations took " + std::to_string(elapsed) + "s (>= 60s)");
}

// --- Criterion: linking oracle equivalence -------------------------------

void check_linking_oracle() {
    std::mt19937_64 rng(20240601);
    std::size_t total_checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        // log-uniform sizes in [1, 10^4], with the extremes pinned
        std::size_t n;
        if (trial == 0) {
            n = 10000;
        } else if (trial == 1) {
            n = 1;
        } else {
            const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            n = static_cast<std::size_t>(std::pow(10.0, u * 4.0));
        }
        auto provider = std::make_shared<embed::HashEmbeddingProvider>(rng(), 768);
        std::vector<kg::Entity> entities;
        entities.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            entities.push_back({"id" + std::to_string(i),
                                "name " + std::to_string(rng() % (n + 1)), "x"});
        }
        if (n > 4 && trial % 2 == 0) {
            entities[1].name = entities[0].name;  // forced exact ties
            entities[3].name = entities[2].name;
        }
        embed::EmbeddingIndex index(entities, provider);
        const std::size_t lc = 10;
        const auto mention = "query mention " + std::to_string(trial);
        const auto got = index.top_candidates(mention, {lc, "hash"});

        // brute force with independent accumulation and a full stable sort
        const auto query = provider->embed_one(mention);
        std::vector<embed::LinkCandidate> expected;
        expected.reserve(n);
        for (const auto& entity : entities) {
            const auto vec = provider->embed_one(entity.name);
            long double dot = 0.0L, qq = 0.0L, vv = 0.0L;
            for (std::size_t i = 0; i < vec.size(); ++i) {
                dot += static_cast<long double>(query[i]) * vec[i];
                qq += static_cast<long double>(query[i]) * query[i];
                vv += static_cast<long double>(vec[i]) * vec[i];
            }
            double sim = static_cast<double>(dot / (sqrtl(qq) * sqrtl(vv)));
            expected.push_back({entity.id, std::clamp(sim, 0.0, 1.0)});
        }
        std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
            if (a.score != b.score) return a.score > b.score;
            return a.entity < b.entity;
        });
        if (expected.size() > lc) expected.resize(lc);

        require(got.size() == expected.size(), "candidate count mismatch");
        for (std::size_t i = 0; i < got.size(); ++i) {
            require(got[i].entity == expected[i].entity,
                    "ranking mismatch at trial " + std::to_string(trial) + " position " +
                        std::to_string(i));
            ++total_checked;
        }
    }
    require(total_checked > 0, "no candidates checked");
}

// --- Criterion: polarity correctness --------------------------------------

void check_polarity() {
    const auto lexicon = kg::PolarityLexicon::load((fixtures_dir() / "lexicon.json").string());
    require(lexicon.classify("Not treats") == kg::Polarity::Negative,
            "'Not treats' must classify negative");
    require(lexicon.classify("Relates with") == kg::Polarity::Positive,
            "'Relates with' must classify positive");

    const auto table = read_file(fixtures_dir() / "polarity_cases.tsv");
    std::istringstream lines(table);
    std::string line;
    std::size_t cases = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = util::split(line, '\t');
        require(fields.size() == 2, "bad polarity case row: " + line);
        const auto got = kg::to_string(lexicon.classify(fields[0]));
        require(got == fields[1],
                "predicate '" + fields[0] + "' classified " + got + ", expected " + fields[1]);
        ++cases;
    }
    require(cases == 50, "expected 50 committed polarity cases, found " + std::to_string(cases));
}

// --- Criterion: metric oracle equivalence ---------------------------------

double reference_weighted_f1(const std::vector<bool>& labels,
                             const std::vector<bool>& predictions) {
    auto class_f1 = [&](bool positive_class) {
        double tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const bool truth = labels[i] == positive_class;
            const bool pred = predictions[i] == positive_class;
            if (truth && pred) ++tp;
            if (!truth && pred) ++fp;
            if (truth && !pred) ++fn;
        }
        const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
    };
    const double support_pos =
        static_cast<double>(std::count(labels.begin(), labels.end(), true));
    const double support_neg = static_cast<double>(labels.size()) - support_pos;
    return (support_pos * class_f1(true) + support_neg * class_f1(false)) /
           static_cast<double>(labels.size());
}

void check_metric_oracle() {
    std::mt19937_64 rng(77);
    auto make_case = [&](const std::vector<bool>& labels, const std::vector<bool>& predictions) {
        cohortio::Cohort cohort;
        cohort.disease = "d";
        std::vector<agents::PredictionOutcome> outcomes;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            cohort.visits.push_back({"v" + std::to_string(i), {"a"}, labels[i]});
            agents::PredictionOutcome outcome;
            outcome.visit_id = "v" + std::to_string(i);
            outcome.final_verdict = predictions[i] ? agents::Verdict::Yes : agents::Verdict::No;
            outcomes.push_back(std::move(outcome));
        }
        return std::make_pair(cohort, outcomes);
    };

    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 50;
        std::vector<bool> labels(n), predictions(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rng() % 2 == 0;
            predictions[i] = rng() % 3 != 0;
        }
        const auto [cohort, outcomes] = make_case(labels, predictions);
        const auto metrics = eval::score(outcomes, cohort);

        double correct = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] == predictions[i]) ++correct;
        }
        const double ref_acc = correct / static_cast<double>(n);
        const double ref_f1 = reference_weighted_f1(labels, predictions);
        require(std::abs(metrics.accuracy - ref_acc) <= 1e-12, "accuracy drifted from oracle");
        require(std::abs(metrics.f1_weighted - ref_f1) <= 1e-12,
                "weighted F1 drifted from oracle");
    }

    const auto [cohort, outcomes] =
        make_case({true, true, false, false}, {true, true, true, true});
    const auto metrics = eval::score(outcomes, cohort);
    require(metrics.accuracy == 0.5, "hand case accuracy must be exactly 0.5");
    require(metrics.f1_weighted == 1.0 / 3.0, "hand case weighted F1 must be exactly 1/3");
}

// --- Criterion: transcript invariants --------------------------------------

void check_transcript_invariants() {
    auto ctx = replay_context();
    std::size_t kerap_outcomes = 0;
    for (const auto* name : {"cohort_main.jsonl", "cohort_case_a.jsonl", "cohort_case_b.jsonl"}) {
        const auto cohort = cohortio::load_cohort((fixtures_dir() / name).string());
        const auto bundle = ctx.knowledge_for(cohort.disease).second;
        require(bundle.negative_summary != prompts::kEmptyKnowledgeSentinel,
                "fixture bundle must carry real exclusion text");

        const auto outcomes = eval::run_pass(ctx, cohort, agents::Strategy::Kerap);
        for (const auto& outcome : outcomes) {
            require(outcome.stage2.has_value(), "kerap outcome missing stage II");
            require(outcome.stage2->prompt.find(outcome.stage1.prompt) != std::string::npos,
                    "stage II prompt must embed the stage I prompt verbatim");
            require(outcome.stage2->prompt.find(outcome.stage1.response) != std::string::npos,
                    "stage II prompt must embed the stage I response verbatim");
            require(outcome.stage1.prompt.find(bundle.negative_summary) == std::string::npos,
                    "exclusion knowledge leaked into a stage I prompt");
            require(outcome.stage2->prompt.find("Instruction: Check your prediction cautiously.") !=
                        std::string::npos,
                    "stage II instruction text missing or altered");
            ++kerap_outcomes;
        }

        for (const auto strategy : {agents::Strategy::Direct, agents::Strategy::StepByStep,
                                    agents::Strategy::Iterative}) {
            for (const auto& outcome : eval::run_pass(ctx, cohort, strategy)) {
                require(outcome.stage1.prompt.find(bundle.positive_summary) == std::string::npos,
                        "inclusion knowledge leaked into a KG-free prompt");
            }
        }
    }
    require(kerap_outcomes >= 202, "expected kerap outcomes across all fixture cohorts");
}

// --- Criterion: case study golden replay -----------------------------------

void check_case_studies() {
    auto ctx = replay_context();

    const auto case_a = cohortio::load_cohort((fixtures_dir() / "cohort_case_a.jsonl").string());
    const auto a = eval::run_pass(ctx, case_a, agents::Strategy::Kerap);
    require(a.size() == 1, "case A must have one visit");
    require(a[0].stage1.verdict == agents::Verdict::Yes, "case A stage I must be YES");
    require(a[0].stage2 && a[0].stage2->verdict == agents::Verdict::No,
            "case A stage II must be NO");
    require(a[0].final_verdict == agents::Verdict::No, "case A final must be NO");

    const auto case_b = cohortio::load_cohort((fixtures_dir() / "cohort_case_b.jsonl").string());
    const auto b = eval::run_pass(ctx, case_b, agents::Strategy::Kerap);
    require(b.size() == 1, "case B must have one visit");
    require(b[0].stage1.verdict == agents::Verdict::Yes, "case B stage I must be YES");
    require(b[0].stage2 && b[0].stage2->verdict == agents::Verdict::Yes,
            "case B stage II must be YES");
    require(b[0].final_verdict == agents::Verdict::Yes, "case B final must be YES");
}

// --- Criterion: cost ledger exactness ---------------------------------------

void check_cost_ledger() {
    const auto cohort = cohortio::load_cohort((fixtures_dir() / "cohort_main.jsonl").string());
    std::map<agents::Strategy, std::int64_t> totals;
    for (const auto strategy : {agents::Strategy::Direct, agents::Strategy::Iterative,
                                agents::Strategy::Kerap}) {
        auto ctx = replay_context();
        const auto outcomes = eval::run_pass(ctx, cohort, strategy);
        llm::TokenUsage manual;
        for (const auto& outcome : outcomes) manual += outcome.usage;

        std::vector<llm::TokenUsage> per_outcome;
        for (const auto& outcome : outcomes) per_outcome.push_back(outcome.usage);
        const auto metered = llm::meter(per_outcome, ctx.pricing(), ctx.config().model);
        require(metered.usage == manual, "meter totals must equal the summed usages exactly");

        const auto ledger = ctx.gateway().total_usage();
        llm::TokenUsage expected = manual;
        expected += ctx.kg_usage();
        require(ledger == expected,
                "gateway ledger must equal prediction plus kg usage exactly");
        totals[strategy] = manual.total_tokens;
    }
    require(totals[agents::Strategy::Kerap] > totals[agents::Strategy::Iterative],
            "kerap must cost more tokens than iterative on fixtures");
    require(totals[agents::Strategy::Iterative] > totals[agents::Strategy::Direct],
            "iterative must cost more tokens than direct on fixtures");
}

// --- Criterion: report formatting -------------------------------------------

void check_report_formatting() {
    const auto formatted = eval::format_mean_std(0.724415, 0.0071);
    require(formatted == "72.44±0.71",
            "format_mean_std(0.724415, 0.0071) rendered '" + formatted + "'");
}

// --- Criterion (optional): live smoke ----------------------------------------

void check_live_smoke() {
    const char* key = std::getenv("KERAP_API_KEY");
    if (!key || !*key) throw SkipCriterion("KERAP_API_KEY not configured");

    TempDir dir("acc_live");
    auto cfg = PipelineConfig::load(config_path());
    cfg.mode = GatewayMode::Live;
    PipelineContext ctx(cfg);
    const auto vocab_raw = read_file(fixtures_dir() / "attribute_vocab.txt");
    std::vector<std::string> vocab;
    std::istringstream lines(vocab_raw);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line[0] != '#') vocab.push_back(line);
    }
    const auto cohort = cohortio::synth_cohort(1, 10, 0.3, vocab, "Chronic kidney disease");
    const auto outcomes = eval::run_pass(ctx, cohort, agents::Strategy::Kerap);
    require(outcomes.size() == 10, "live smoke must predict all ten visits");
    std::size_t clean = 0;
    for (const auto& outcome : outcomes) {
        if (outcome.parse_fallbacks == 0) ++clean;
    }
    require(clean >= 8, "live smoke parsed cleanly on only " + std::to_string(clean) +
                            " of 10 visits");
    const auto metrics = eval::score(outcomes, cohort);
    require(metrics.confusion.total() == 10, "live smoke metrics incomplete");
}

}  // namespace

int main() {
    util::set_log_level(util::LogLevel::Off);
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"replay-determinism", check_replay_determinism},
        {"linking-oracle-equivalence", check_linking_oracle},
        {"polarity-correctness", check_polarity},
        {"metric-oracle-equivalence", check_metric_oracle},
        {"transcript-invariants", check_transcript_invariants},
        {"case-study-golden-replay", check_case_studies},
        {"cost-ledger-exactness", check_cost_ledger},
        {"report-formatting", check_report_formatting},
        {"live-smoke (optional)", check_live_smoke},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        try {
            fn();
            std::cout << "[PASS] " << name << "\n";
        } catch (const SkipCriterion& e) {
            std::cout << "[SKIP] " << name << ": " << e.what() << "\n";
        } catch (const std::exception& e) {
            std::cout << "[FAIL] " << name << ": " << e.what() << "\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
