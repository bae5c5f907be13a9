#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kerap/embed/index.hpp"
#include "kerap/kg/store.hpp"
#include "kerap/llm/gateway.hpp"

namespace kerap::agents {

struct LinkResult {
    std::string mention;
    std::string chosen;            // entity id, always one of the candidates
    std::size_t rank_of_chosen = 0;  // 1-based position in the candidate list
    std::vector<embed::LinkCandidate> candidates;
    std::vector<llm::ChatMessage> transcript;
    llm::TokenUsage usage;
    bool fallback = false;  // set when both LLM answers failed to parse
};

struct LinkageConfig {
    std::string model = "gpt-4o-mini";
    double temperature = 0.0;
    int max_tokens = 64;
    embed::LinkerConfig linker;
};

/// Accepts a bare index ("2"), an index wrapped in punctuation ("(2).",
/// "2."), or a verbatim candidate name (case-insensitive exact match).
/// Returns the 0-based candidate position, or nullopt on parse failure.
std::optional<std::size_t> parse_selection(const std::string& response,
                                           const std::vector<std::string>& candidate_names);

/// Maps a disease mention to a KG entity: top-LC candidate generation by the
/// index, then one LLM disambiguation turn. A single-candidate list short-
/// circuits without an LLM call. An unparseable answer is re-asked once; on a
/// second failure the rank-1 candidate is chosen and `fallback` set.
LinkResult link(llm::Gateway& gateway, const kg::KgStore& store, const embed::EmbeddingIndex& index,
                const std::string& mention, const LinkageConfig& cfg);

/// Read-mostly per-mention memo so one pipeline run links each target disease
/// once.
class LinkCache {
public:
    std::optional<LinkResult> get(const std::string& mention) const;
    void put(const std::string& mention, LinkResult result);

private:
    mutable std::mutex mutex_;
    std::unordered_map<std::string, LinkResult> results_;
};

}  // namespace kerap::agents
