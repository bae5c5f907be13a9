#pragma once

#include "json.hpp"
#include "kerap/agents/linkage.hpp"
#include "kerap/agents/prediction.hpp"
#include "kerap/agents/retrieval.hpp"

namespace kerap::agents {

nlohmann::json to_json(const llm::TokenUsage& usage);
nlohmann::json to_json(const std::vector<llm::ChatMessage>& transcript);
nlohmann::json to_json(const LinkResult& result);
nlohmann::json to_json(const KnowledgeBundle& bundle);
nlohmann::json to_json(const PredictionOutcome& outcome);

}  // namespace kerap::agents
