#include "kerap/agents/serialize.hpp"

namespace kerap::agents {

nlohmann::json to_json(const llm::TokenUsage& usage) {
    return {{"prompt_tokens", usage.prompt_tokens},
            {"completion_tokens", usage.completion_tokens},
            {"total_tokens", usage.total_tokens}};
}

nlohmann::json to_json(const std::vector<llm::ChatMessage>& transcript) {
    auto out = nlohmann::json::array();
    for (const auto& m : transcript) {
        out.push_back({{"role", llm::to_string(m.role)}, {"content", m.content}});
    }
    return out;
}

nlohmann::json to_json(const LinkResult& result) {
    nlohmann::json doc;
    doc["mention"] = result.mention;
    doc["chosen"] = result.chosen;
    doc["rank_of_chosen"] = result.rank_of_chosen;
    auto& candidates = doc["candidates"] = nlohmann::json::array();
    for (const auto& c : result.candidates) {
        candidates.push_back({{"entity", c.entity}, {"score", c.score}});
    }
    doc["transcript"] = to_json(result.transcript);
    doc["usage"] = to_json(result.usage);
    doc["fallback"] = result.fallback;
    return doc;
}

nlohmann::json to_json(const KnowledgeBundle& bundle) {
    nlohmann::json doc;
    doc["disease"] = bundle.disease;
    doc["entity"] = bundle.entity;
    doc["positive_summary"] = bundle.positive_summary;
    doc["negative_summary"] = bundle.negative_summary;
    doc["source_counts"] = {bundle.source_counts.first, bundle.source_counts.second};
    doc["usage"] = to_json(bundle.usage);
    return doc;
}

nlohmann::json to_json(const PredictionOutcome& outcome) {
    auto stage = [](const StageRecord& record) {
        return nlohmann::json{{"prompt", record.prompt},
                              {"response", record.response},
                              {"verdict", to_string(record.verdict)}};
    };
    nlohmann::json doc;
    doc["visit_id"] = outcome.visit_id;
    doc["disease"] = outcome.disease;
    doc["strategy"] = to_string(outcome.strategy);
    doc["stage1"] = stage(outcome.stage1);
    doc["stage2"] = outcome.stage2 ? stage(*outcome.stage2) : nlohmann::json(nullptr);
    doc["final"] = to_string(outcome.final_verdict);
    doc["usage"] = to_json(outcome.usage);
    doc["parse_fallbacks"] = outcome.parse_fallbacks;
    return doc;
}

}  // namespace kerap::agents
