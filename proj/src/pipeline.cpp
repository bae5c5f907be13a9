#include "kerap/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "kerap/llm/live_backend.hpp"
#include "kerap/embed/hash_provider.hpp"
#include "kerap/embed/http_provider.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/log.hpp"

namespace kerap {

namespace fs = std::filesystem;

GatewayMode mode_from_string(const std::string& name) {
    if (name == "live") return GatewayMode::Live;
    if (name == "replay") return GatewayMode::Replay;
    if (name == "record") return GatewayMode::Record;
    throw ConfigError("gateway mode must be live|replay|record, got '" + name + "'");
}

const char* to_string(GatewayMode mode) {
    switch (mode) {
        case GatewayMode::Live: return "live";
        case GatewayMode::Replay: return "replay";
        default: return "record";
    }
}

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value && *value ? value : fallback;
}

void require_exists(const std::string& path, const char* what) {
    if (path.empty()) throw ConfigError(std::string(what) + " path missing from config");
    if (!fs::exists(path)) {
        throw ConfigError(std::string(what) + " path does not exist: " + path);
    }
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }

    PipelineConfig cfg;
    try {
        const auto base = fs::path(path).parent_path();
        auto resolve = [&](const std::string& p) {
            if (p.empty()) return p;
            fs::path candidate(p);
            return candidate.is_absolute() ? p : (base / candidate).string();
        };

        const auto& kg = doc.at("kg");
        cfg.entity_file = resolve(kg.at("entities").get<std::string>());
        cfg.triple_file = resolve(kg.at("triples").get<std::string>());
        cfg.lexicon_file = resolve(doc.at("lexicon").get<std::string>());
        cfg.pricing_file = resolve(doc.at("pricing").get<std::string>());

        if (doc.contains("embedding")) {
            const auto& emb = doc["embedding"];
            cfg.embedding_provider = emb.value("provider", cfg.embedding_provider);
            cfg.embedding_dimension = emb.value("dimension", cfg.embedding_dimension);
            cfg.embedding_model = emb.value("model", cfg.embedding_model);
            cfg.embedding_base_url = emb.value("base_url", cfg.embedding_base_url);
        }
        if (doc.contains("linker")) {
            cfg.candidate_count = doc["linker"].value("candidate_count", cfg.candidate_count);
        }
        cfg.neighborhood_cap = doc.value("neighborhood_cap", cfg.neighborhood_cap);

        const auto& llm = doc.at("llm");
        cfg.model = llm.value("model", cfg.model);
        cfg.temperature = llm.value("temperature", cfg.temperature);
        cfg.max_tokens = llm.value("max_tokens", cfg.max_tokens);
        cfg.mode = mode_from_string(llm.value("mode", "replay"));
        cfg.cassette_file = resolve(llm.value("cassette", ""));
        cfg.base_url = llm.value("base_url", cfg.base_url);
        cfg.requests_per_minute = llm.value("requests_per_minute", cfg.requests_per_minute);
        cfg.max_in_flight = llm.value("max_in_flight", cfg.max_in_flight);
        cfg.max_retries = llm.value("max_retries", cfg.max_retries);

        cfg.bundle_cache_dir = resolve(doc.value("bundle_cache_dir", ""));
        cfg.parallelism = doc.value("parallelism", cfg.parallelism);
        cfg.seed = doc.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }

    require_exists(cfg.entity_file, "kg.entities");
    require_exists(cfg.triple_file, "kg.triples");
    require_exists(cfg.lexicon_file, "lexicon");
    require_exists(cfg.pricing_file, "pricing");
    if (cfg.mode == GatewayMode::Replay) require_exists(cfg.cassette_file, "llm.cassette");
    if (cfg.mode == GatewayMode::Record && cfg.cassette_file.empty()) {
        throw ConfigError("record mode needs llm.cassette");
    }
    if (cfg.candidate_count < 1) throw ConfigError("linker.candidate_count must be >= 1");
    if (cfg.embedding_dimension < 1) throw ConfigError("embedding.dimension must be >= 1");
    if (cfg.parallelism < 1) throw ConfigError("parallelism must be >= 1");
    return cfg;
}

nlohmann::json PipelineConfig::to_json() const {
    nlohmann::json doc;
    doc["kg"] = {{"entities", entity_file}, {"triples", triple_file}};
    doc["lexicon"] = lexicon_file;
    doc["pricing"] = pricing_file;
    doc["embedding"] = {{"provider", embedding_provider},
                        {"dimension", embedding_dimension},
                        {"model", embedding_model},
                        {"base_url", embedding_base_url}};
    doc["linker"] = {{"candidate_count", candidate_count}};
    doc["neighborhood_cap"] = neighborhood_cap;
    doc["llm"] = {{"model", model},
                  {"temperature", temperature},
                  {"max_tokens", max_tokens},
                  {"mode", to_string(mode)},
                  {"cassette", cassette_file},
                  {"base_url", base_url},
                  {"requests_per_minute", requests_per_minute},
                  {"max_in_flight", max_in_flight},
                  {"max_retries", max_retries},
                  {"api_key", std::getenv("KERAP_API_KEY") ? "<redacted:env>" : "<unset>"}};
    doc["bundle_cache_dir"] = bundle_cache_dir;
    doc["parallelism"] = parallelism;
    doc["seed"] = seed;
    return doc;
}

PipelineContext::PipelineContext(PipelineConfig config,
                                 std::unique_ptr<llm::Backend> backend_override)
    : config_(std::move(config)),
      store_(kg::KgStore::ingest(config_.entity_file, config_.triple_file)),
      lexicon_(kg::PolarityLexicon::load(config_.lexicon_file)),
      pricing_(llm::PricingTable::load(config_.pricing_file)),
      bundle_cache_(config_.bundle_cache_dir) {
    const std::string api_key = env_or("KERAP_API_KEY", "");
    const std::string base_url = env_or("KERAP_BASE_URL", config_.base_url);

    std::shared_ptr<embed::EmbeddingProvider> provider;
    if (config_.embedding_provider == "hash") {
        provider = std::make_shared<embed::HashEmbeddingProvider>(config_.seed,
                                                                  config_.embedding_dimension);
    } else if (config_.embedding_provider == "http") {
        util::RetryPolicy retry;
        retry.max_retries = config_.max_retries;
        provider = std::make_shared<embed::HttpEmbeddingProvider>(
            env_or("KERAP_BASE_URL", config_.embedding_base_url.empty()
                                         ? config_.base_url
                                         : config_.embedding_base_url),
            config_.embedding_model, api_key, config_.embedding_dimension, retry);
    } else {
        throw ConfigError("embedding.provider must be hash|http, got '" +
                          config_.embedding_provider + "'");
    }
    index_ = std::make_unique<embed::EmbeddingIndex>(store_.entities(), std::move(provider));

    std::unique_ptr<llm::Backend> backend;
    if (backend_override) {
        backend = std::move(backend_override);
    } else {
        switch (config_.mode) {
            case GatewayMode::Live: {
                util::RetryPolicy retry;
                retry.max_retries = config_.max_retries;
                backend = std::make_unique<llm::LiveBackend>(base_url, api_key, retry);
                break;
            }
            case GatewayMode::Replay:
                backend = std::make_unique<llm::ReplayBackend>(
                    llm::Cassette::load(config_.cassette_file));
                break;
            case GatewayMode::Record: {
                util::RetryPolicy retry;
                retry.max_retries = config_.max_retries;
                llm::Cassette initial;
                if (fs::exists(config_.cassette_file)) {
                    initial = llm::Cassette::load(config_.cassette_file);
                }
                backend = std::make_unique<llm::RecordBackend>(
                    std::make_unique<llm::LiveBackend>(base_url, api_key, retry),
                    std::move(initial), config_.cassette_file);
                break;
            }
        }
    }
    recorder_ = dynamic_cast<llm::RecordBackend*>(backend.get());
    llm::GatewayLimits limits;
    limits.requests_per_minute = config_.requests_per_minute;
    limits.max_in_flight = config_.max_in_flight;
    gateway_ = std::make_unique<llm::Gateway>(std::move(backend), limits);
}

agents::LinkageConfig PipelineContext::linkage_config() const {
    agents::LinkageConfig cfg;
    cfg.model = config_.model;
    cfg.temperature = config_.temperature;
    cfg.linker.candidate_count = config_.candidate_count;
    cfg.linker.provider = config_.embedding_provider;
    return cfg;
}

agents::RetrievalConfig PipelineContext::retrieval_config() const {
    agents::RetrievalConfig cfg;
    cfg.model = config_.model;
    cfg.temperature = config_.temperature;
    cfg.max_tokens = config_.max_tokens;
    cfg.neighborhood_cap = config_.neighborhood_cap;
    return cfg;
}

agents::PredictionConfig PipelineContext::prediction_config() const {
    agents::PredictionConfig cfg;
    cfg.model = config_.model;
    cfg.temperature = config_.temperature;
    cfg.max_tokens = config_.max_tokens;
    return cfg;
}

std::pair<agents::LinkResult, agents::KnowledgeBundle> PipelineContext::knowledge_for(
    const std::string& disease) {
    agents::LinkResult link_result;
    if (auto cached = link_cache_.get(disease)) {
        link_result = *cached;
    } else {
        link_result = agents::link(*gateway_, store_, *index_, disease, linkage_config());
        link_cache_.put(disease, link_result);
        std::lock_guard<std::mutex> lock(kg_usage_mutex_);
        kg_usage_ += link_result.usage;
    }

    const auto key =
        agents::bundle_cache_key(link_result.chosen, lexicon_, config_.neighborhood_cap);
    if (auto cached = bundle_cache_.get(key)) {
        return {std::move(link_result), *cached};
    }
    auto bundle = agents::retrieve(*gateway_, store_, link_result, lexicon_, retrieval_config());
    bundle_cache_.put(key, bundle);
    {
        std::lock_guard<std::mutex> lock(kg_usage_mutex_);
        kg_usage_ += bundle.usage;
    }
    return {std::move(link_result), std::move(bundle)};
}

llm::TokenUsage PipelineContext::kg_usage() const {
    std::lock_guard<std::mutex> lock(kg_usage_mutex_);
    return kg_usage_;
}

void PipelineContext::flush_recordings() {
    if (recorder_) {
        recorder_->flush();
        util::log_info("cassette flushed",
                       {{"path", config_.cassette_file},
                        {"entries", std::to_string(recorder_->cassette().size())}});
    }
}

}  // namespace kerap
