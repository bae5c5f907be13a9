#include "kerap/prompts/templates.hpp"

#include "kerap/util/errors.hpp"
#include "kerap/util/strings.hpp"

namespace kerap::prompts {

using agents::Strategy;

namespace {

const char* kSelfReflection =
    "Reflect carefully on the patient's record and your own reasoning; question each "
    "assumption before you commit to an answer.";

const char* kStepByStepBlock =
    "Think through the following steps before answering:\n"
    "1. Summarize the patient's recorded conditions and treatments.\n"
    "2. Identify risk factors relevant to the target disease.\n"
    "3. Weigh the evidence for and against the diagnosis.\n"
    "4. Decide.";

}  // namespace

std::string linkage_system() {
    return "You are a biomedical entity linking assistant. You map a clinical disease mention "
           "to the single best matching knowledge-graph entity from a candidate list.";
}

std::string linkage_user(const std::string& mention,
                         const std::vector<std::string>& candidate_names) {
    std::string out = "Mention: \"" + mention + "\"\n\nCandidates:\n";
    for (std::size_t i = 0; i < candidate_names.size(); ++i) {
        out += std::to_string(i + 1) + ". " + candidate_names[i] + "\n";
    }
    out += "\nWhich candidate is the best match for the mention? Answer with the number only.";
    return out;
}

std::string linkage_reask() {
    return "Your previous answer did not name a listed candidate. Answer with the candidate "
           "number only, e.g. 3.";
}

std::string render_triple_line(const std::string& head_name, const std::string& predicate,
                               const std::string& tail_name) {
    return "(" + head_name + ", " + predicate + ", " + tail_name + ")";
}

std::string retrieval_system() {
    return "You are a biomedical knowledge summarization assistant. You turn knowledge-graph "
           "relations into concise clinical guidance.";
}

static std::string retrieval_user(const std::string& disease, const std::string& framing,
                                  const std::string& instruction,
                                  const std::vector<std::string>& triple_lines) {
    std::string out = "Disease: " + disease + "\n\n";
    out += framing;
    out += "\n";
    for (const auto& line : triple_lines) {
        out += line;
        out += "\n";
    }
    out += "\n";
    out += instruction;
    return out;
}

std::string retrieval_user_positive(const std::string& disease,
                                    const std::vector<std::string>& triple_lines) {
    return retrieval_user(disease, "Knowledge-graph relations supporting inclusion criteria:",
                          "Summarize the key diagnosis factors that indicate or support \"" +
                              disease + "\". Write one short paragraph.",
                          triple_lines);
}

std::string retrieval_user_negative(const std::string& disease,
                                    const std::vector<std::string>& triple_lines) {
    return retrieval_user(disease, "Knowledge-graph relations supporting exclusion criteria:",
                          "Summarize the factors that rule out or are unrelated to \"" + disease +
                              "\". Write one short paragraph.",
                          triple_lines);
}

std::string prediction_system() {
    return "You are a clinical diagnosis prediction assistant. Given the medical attributes "
           "recorded at a patient's current visit, you predict whether the patient will "
           "develop the target disease at the next visit.";
}

std::string ehr_and_question(const std::vector<std::string>& attributes,
                             const std::string& disease) {
    return "EHR Data: " + util::join(attributes, "; ") + ".\n\nQuestion: Will the patient " +
           "develop \"" + disease + "\" at the next visit?";
}

std::string stage1_prompt(Strategy strategy, const std::vector<std::string>& attributes,
                          const std::string& disease, const std::string& positive_summary,
                          const std::string& negative_summary) {
    std::string out = ehr_and_question(attributes, disease);
    switch (strategy) {
        case Strategy::Direct:
            break;
        case Strategy::StepByStep:
            out += "\n\n";
            out += kStepByStepBlock;
            break;
        case Strategy::KgAugmented:
            out += "\n\nGuidance from KG (inclusion criteria): " + positive_summary;
            out += "\n\nGuidance from KG (exclusion criteria): " + negative_summary;
            break;
        case Strategy::Iterative:
            out += "\n\nGuidance: ";
            out += kSelfReflection;
            break;
        case Strategy::Kerap:
            out += "\n\nGuidance from KG: " + positive_summary;
            break;
    }
    out += "\n\n";
    out += kAnswerInstruction;
    return out;
}

std::string stage2_prompt(Strategy strategy, const std::string& stage1_prompt_text,
                          const std::string& stage1_response,
                          const std::string& negative_summary) {
    if (!agents::is_two_stage(strategy)) {
        throw InvalidInputError("stage2_prompt is only defined for two-stage strategies");
    }
    std::string out = stage1_prompt_text;
    out += "\n\nYour previous answer: " + stage1_response;
    out += "\n\nInstruction: ";
    out += kStage2Instruction;
    if (strategy == Strategy::Kerap) {
        out += "\n\nGuidance from KG: " + negative_summary;
    } else {
        out += "\n\nGuidance: ";
        out += kSelfReflection;
    }
    out += "\n\n";
    out += kAnswerInstruction;
    return out;
}

}  // namespace kerap::prompts
