#include "kerap/agents/prediction.hpp"

#include <cctype>

#include "kerap/prompts/templates.hpp"
#include "kerap/util/errors.hpp"

namespace kerap::agents {

namespace {

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool token_at(const std::string& text, std::size_t pos, const char* token, std::size_t len) {
    if (pos + len > text.size()) return false;
    for (std::size_t i = 0; i < len; ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) != token[i]) return false;
    }
    const bool left_ok = pos == 0 || !word_char(text[pos - 1]);
    const bool right_ok = pos + len == text.size() || !word_char(text[pos + len]);
    return left_ok && right_ok;
}

std::optional<Verdict> scan_region(const std::string& text, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
        if (token_at(text, i, "yes", 3)) return Verdict::Yes;
        if (token_at(text, i, "no", 2)) return Verdict::No;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Verdict> parse_verdict(const std::string& response) {
    const auto first_line_end = response.find('\n');
    const auto line_end = first_line_end == std::string::npos ? response.size() : first_line_end;
    if (auto verdict = scan_region(response, 0, line_end)) return verdict;
    return scan_region(response, 0, response.size());
}

namespace {

/// One conversational stage: ask, parse, re-ask once on failure, fall back to
/// the configured verdict on a second failure.
StageRecord run_stage(llm::Gateway& gateway, const PredictionConfig& cfg,
                      const std::string& prompt, llm::TokenUsage& usage, int& parse_fallbacks) {
    llm::CompletionRequest req;
    req.model = cfg.model;
    req.temperature = cfg.temperature;
    req.max_tokens = cfg.max_tokens;
    req.messages = {{llm::Role::System, prompts::prediction_system()},
                    {llm::Role::User, prompt}};

    auto first = gateway.complete(req);
    usage += first.usage;

    StageRecord record;
    record.prompt = prompt;
    record.response = first.text;
    if (auto verdict = parse_verdict(first.text)) {
        record.verdict = *verdict;
        return record;
    }

    req.messages.push_back({llm::Role::Assistant, first.text});
    req.messages.push_back({llm::Role::User, prompts::kReaskInstruction});
    auto second = gateway.complete(req);
    usage += second.usage;
    record.response = second.text;
    if (auto verdict = parse_verdict(second.text)) {
        record.verdict = *verdict;
        return record;
    }

    ++parse_fallbacks;
    record.verdict = cfg.fallback_verdict;
    return record;
}

}  // namespace

PredictionOutcome predict(llm::Gateway& gateway, const cohortio::PatientVisit& visit,
                          const std::string& disease, const KnowledgeBundle* bundle,
                          Strategy strategy, const PredictionConfig& cfg) {
    if (visit.attributes.empty()) {
        throw InvalidInputError("visit '" + visit.visit_id + "' has no attributes");
    }
    if (uses_kg(strategy) && bundle == nullptr) {
        throw InvalidInputError(std::string("strategy ") + to_string(strategy) +
                                " needs a knowledge bundle");
    }

    const std::string positive = bundle ? bundle->positive_summary : "";
    const std::string negative = bundle ? bundle->negative_summary : "";

    PredictionOutcome outcome;
    outcome.visit_id = visit.visit_id;
    outcome.disease = disease;
    outcome.strategy = strategy;

    const auto prompt1 =
        prompts::stage1_prompt(strategy, visit.attributes, disease, positive, negative);
    outcome.stage1 =
        run_stage(gateway, cfg, prompt1, outcome.usage, outcome.parse_fallbacks);

    if (is_two_stage(strategy)) {
        const auto prompt2 =
            prompts::stage2_prompt(strategy, prompt1, outcome.stage1.response, negative);
        outcome.stage2 =
            run_stage(gateway, cfg, prompt2, outcome.usage, outcome.parse_fallbacks);
        outcome.final_verdict = outcome.stage2->verdict;
    } else {
        outcome.final_verdict = outcome.stage1.verdict;
    }
    return outcome;
}

}  // namespace kerap::agents
