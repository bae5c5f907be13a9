#pragma once

#include <optional>
#include <string>

#include "kerap/agents/retrieval.hpp"
#include "kerap/agents/strategy.hpp"
#include "kerap/cohort/cohort.hpp"
#include "kerap/llm/gateway.hpp"

namespace kerap::agents {

enum class Verdict { Yes, No };

inline const char* to_string(Verdict v) { return v == Verdict::Yes ? "YES" : "NO"; }

/// Finds a standalone YES/NO token (case-insensitive, word-boundary): first
/// line first, then the whole text; the earliest occurrence wins. Returns
/// nullopt when neither token appears — never a silent default.
std::optional<Verdict> parse_verdict(const std::string& response);

struct StageRecord {
    std::string prompt;    // the user-turn text for this stage
    std::string response;  // the accepted assistant reply
    Verdict verdict = Verdict::No;
};

struct PredictionOutcome {
    std::string visit_id;
    std::string disease;
    Strategy strategy = Strategy::Direct;
    StageRecord stage1;
    std::optional<StageRecord> stage2;  // present iff the strategy is two-stage
    Verdict final_verdict = Verdict::No;
    llm::TokenUsage usage;
    int parse_fallbacks = 0;  // stages that fell back to the default verdict
};

struct PredictionConfig {
    std::string model = "gpt-4o-mini";
    double temperature = 0.0;
    int max_tokens = 768;
    /// Verdict used when a stage's answer fails to parse twice. YES keeps
    /// failures visible as predicted-positive rather than silently negative.
    Verdict fallback_verdict = Verdict::Yes;
};

/// Runs the selected prompting strategy over one visit. Two-stage strategies
/// carry the full Stage I prompt and response verbatim into the Stage II
/// prompt. `bundle` is required by the KG-using strategies and ignored by the
/// rest. An unparseable stage answer is re-asked once before falling back.
PredictionOutcome predict(llm::Gateway& gateway, const cohortio::PatientVisit& visit,
                          const std::string& disease, const KnowledgeBundle* bundle,
                          Strategy strategy, const PredictionConfig& cfg);

}  // namespace kerap::agents
