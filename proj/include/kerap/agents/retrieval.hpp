#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

#include "kerap/agents/linkage.hpp"
#include "kerap/kg/store.hpp"
#include "kerap/llm/gateway.hpp"

namespace kerap::agents {

/// Summarized inclusion and exclusion knowledge for one disease. A side with
/// no triples carries the fixed empty-knowledge sentinel instead of an LLM
/// summary so downstream prompts stay well-formed.
struct KnowledgeBundle {
    std::string disease;
    std::string entity;  // linked KG entity id
    std::string positive_summary;
    std::string negative_summary;
    std::pair<std::size_t, std::size_t> source_counts{0, 0};  // (positive, negative) triples used
    llm::TokenUsage usage;
};

struct RetrievalConfig {
    std::string model = "gpt-4o-mini";
    double temperature = 0.0;
    int max_tokens = 512;
    std::size_t neighborhood_cap = 200;
};

/// Cache key: the bundle depends only on the linked entity, the polarity
/// rules, the neighborhood cap and the prompt template version.
std::string bundle_cache_key(const std::string& entity_id, const kg::PolarityLexicon& lexicon,
                             std::size_t cap);

/// Extracts the linked entity's polarized neighborhood and issues one
/// summarization call per nonempty polarity. Triples are rendered with entity
/// names, one "(head, predicate, tail)" line each.
KnowledgeBundle retrieve(llm::Gateway& gateway, const kg::KgStore& store, const LinkResult& link,
                         const kg::PolarityLexicon& lexicon, const RetrievalConfig& cfg);

/// In-memory bundle memo with optional on-disk persistence (one JSON file per
/// cache key in a bundle directory). A cache hit spends zero tokens.
class BundleCache {
public:
    BundleCache() = default;
    explicit BundleCache(std::string dir) : dir_(std::move(dir)) {}

    std::optional<KnowledgeBundle> get(const std::string& key) const;
    void put(const std::string& key, const KnowledgeBundle& bundle);

private:
    std::string dir_;  // empty = memory only
    mutable std::mutex mutex_;
    std::unordered_map<std::string, KnowledgeBundle> bundles_;
};

}  // namespace kerap::agents
