#pragma once

#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "kerap/agents/linkage.hpp"
#include "kerap/agents/prediction.hpp"
#include "kerap/agents/retrieval.hpp"
#include "kerap/embed/index.hpp"
#include "kerap/kg/store.hpp"
#include "kerap/llm/gateway.hpp"
#include "kerap/llm/pricing.hpp"

namespace kerap {

enum class GatewayMode { Live, Replay, Record };

GatewayMode mode_from_string(const std::string& name);
const char* to_string(GatewayMode mode);

/// Everything a run needs, loaded from one JSON config file. All referenced
/// paths must exist at load time (the cassette may be absent in record mode).
/// The API key is never part of the file; it comes from KERAP_API_KEY, and
/// KERAP_BASE_URL overrides the configured endpoint.
struct PipelineConfig {
    std::string entity_file;
    std::string triple_file;
    std::string lexicon_file;
    std::string pricing_file;

    std::string embedding_provider = "hash";  // "hash" or "http"
    std::size_t embedding_dimension = 768;
    std::string embedding_model;     // http provider only
    std::string embedding_base_url;  // http provider only

    std::size_t candidate_count = 10;   // LC
    std::size_t neighborhood_cap = 200;

    std::string model = "gpt-4o-mini";
    double temperature = 0.0;
    int max_tokens = 768;
    GatewayMode mode = GatewayMode::Replay;
    std::string cassette_file;
    std::string base_url = "https://api.openai.com/v1";
    int requests_per_minute = 300;
    int max_in_flight = 4;
    int max_retries = 3;

    std::string bundle_cache_dir;  // empty = in-memory only
    int parallelism = 1;
    std::uint64_t seed = 42;

    static PipelineConfig load(const std::string& path);
    nlohmann::json to_json() const;  // secrets-free echo
};

/// Owns the loaded store, index, gateway and caches. Shareable across
/// concurrent per-visit predictions.
class PipelineContext {
public:
    /// `backend_override` replaces the mode-derived backend (fixture
    /// generation wires a scripted backend through here).
    explicit PipelineContext(PipelineConfig config,
                             std::unique_ptr<llm::Backend> backend_override = nullptr);

    const PipelineConfig& config() const { return config_; }
    const kg::KgStore& store() const { return store_; }
    const kg::PolarityLexicon& lexicon() const { return lexicon_; }
    const embed::EmbeddingIndex& index() const { return *index_; }
    llm::Gateway& gateway() { return *gateway_; }
    const llm::PricingTable& pricing() const { return pricing_; }

    agents::LinkageConfig linkage_config() const;
    agents::RetrievalConfig retrieval_config() const;
    agents::PredictionConfig prediction_config() const;

    /// Link the disease and fetch its knowledge bundle, each at most once per
    /// cache key; repeat calls are free.
    std::pair<agents::LinkResult, agents::KnowledgeBundle> knowledge_for(
        const std::string& disease);

    /// Tokens actually spent on linkage + retrieval so far.
    llm::TokenUsage kg_usage() const;

    /// True when timing must not leak into reports (replay determinism).
    bool deterministic_timing() const { return config_.mode == GatewayMode::Replay; }

    /// Persist the cassette when running in record mode.
    void flush_recordings();

private:
    PipelineConfig config_;
    kg::KgStore store_;
    kg::PolarityLexicon lexicon_;
    std::unique_ptr<embed::EmbeddingIndex> index_;
    llm::PricingTable pricing_;
    std::unique_ptr<llm::Gateway> gateway_;
    llm::RecordBackend* recorder_ = nullptr;  // owned by gateway_

    agents::LinkCache link_cache_;
    agents::BundleCache bundle_cache_;
    mutable std::mutex kg_usage_mutex_;
    llm::TokenUsage kg_usage_;
};

}  // namespace kerap
