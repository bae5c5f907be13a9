#pragma once

#include <string>
#include <vector>

#include "kerap/agents/strategy.hpp"

namespace kerap::prompts {

// All prompt text lives here and nowhere else. Cassette fingerprints hash the
// rendered prompts, so any change to these strings must bump the version and
// re-record the committed cassettes.
inline constexpr const char* kTemplateVersion = "v1";

inline constexpr const char* kStage2Instruction = "Check your prediction cautiously.";
inline constexpr const char* kAnswerInstruction =
    "Answer with YES or NO first, then give your reasoning.";
inline constexpr const char* kReaskInstruction = "Answer strictly YES or NO.";
inline constexpr const char* kEmptyKnowledgeSentinel =
    "No curated knowledge available for this criterion.";

// Linkage agent.
std::string linkage_system();
std::string linkage_user(const std::string& mention,
                         const std::vector<std::string>& candidate_names);
std::string linkage_reask();

// Retrieval agent. `triple_lines` are pre-rendered "(head, predicate, tail)"
// rows, one per line.
std::string render_triple_line(const std::string& head_name, const std::string& predicate,
                               const std::string& tail_name);
std::string retrieval_system();
std::string retrieval_user_positive(const std::string& disease,
                                    const std::vector<std::string>& triple_lines);
std::string retrieval_user_negative(const std::string& disease,
                                    const std::vector<std::string>& triple_lines);

// Prediction agent.
std::string prediction_system();

/// "EHR Data: a; b; c.\n\nQuestion: Will the patient develop "<d>" at the
/// next visit?" — attribute order preserved, joined with "; ".
std::string ehr_and_question(const std::vector<std::string>& attributes,
                             const std::string& disease);

/// First-turn prompt for any strategy. `positive_summary`/`negative_summary`
/// are only read by the strategies that use the KG.
std::string stage1_prompt(agents::Strategy strategy, const std::vector<std::string>& attributes,
                          const std::string& disease, const std::string& positive_summary,
                          const std::string& negative_summary);

/// Second-turn prompt for the two-stage strategies. Embeds the full Stage I
/// prompt and response verbatim, then the fixed cautious-check instruction.
std::string stage2_prompt(agents::Strategy strategy, const std::string& stage1_prompt_text,
                          const std::string& stage1_response,
                          const std::string& negative_summary);

}  // namespace kerap::prompts
