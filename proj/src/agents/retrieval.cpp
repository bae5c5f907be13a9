#include "kerap/agents/retrieval.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "kerap/prompts/templates.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/hash.hpp"

namespace kerap::agents {

namespace fs = std::filesystem;

std::string bundle_cache_key(const std::string& entity_id, const kg::PolarityLexicon& lexicon,
                             std::size_t cap) {
    std::string canon = entity_id;
    canon += '\x1f';
    canon += lexicon.content_hash();
    canon += '\x1f';
    canon += std::to_string(cap);
    canon += '\x1f';
    canon += prompts::kTemplateVersion;
    return util::sha256_hex(canon);
}

namespace {

std::vector<std::string> render_lines(const kg::KgStore& store,
                                      const std::vector<kg::RelationTriple>& triples) {
    std::vector<std::string> lines;
    lines.reserve(triples.size());
    for (const auto& t : triples) {
        lines.push_back(prompts::render_triple_line(store.entity(t.head).name, t.predicate,
                                                    store.entity(t.tail).name));
    }
    return lines;
}

}  // namespace

KnowledgeBundle retrieve(llm::Gateway& gateway, const kg::KgStore& store, const LinkResult& link,
                         const kg::PolarityLexicon& lexicon, const RetrievalConfig& cfg) {
    if (!store.has_entity(link.chosen)) {
        throw NotFoundError("linked entity '" + link.chosen + "' is not in the store");
    }

    const auto hood = store.neighborhood(link.chosen, lexicon, cfg.neighborhood_cap);

    KnowledgeBundle bundle;
    bundle.disease = link.mention;
    bundle.entity = link.chosen;
    bundle.source_counts = {hood.positive.size(), hood.negative.size()};

    auto summarize = [&](const std::vector<kg::RelationTriple>& triples,
                         bool positive) -> std::string {
        if (triples.empty()) return prompts::kEmptyKnowledgeSentinel;
        const auto lines = render_lines(store, triples);
        llm::CompletionRequest req;
        req.model = cfg.model;
        req.temperature = cfg.temperature;
        req.max_tokens = cfg.max_tokens;
        req.messages = {{llm::Role::System, prompts::retrieval_system()},
                        {llm::Role::User,
                         positive ? prompts::retrieval_user_positive(bundle.disease, lines)
                                  : prompts::retrieval_user_negative(bundle.disease, lines)}};
        auto result = gateway.complete(req);
        bundle.usage += result.usage;
        return result.text;
    };

    bundle.positive_summary = summarize(hood.positive, true);
    bundle.negative_summary = summarize(hood.negative, false);
    return bundle;
}

std::optional<KnowledgeBundle> BundleCache::get(const std::string& key) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = bundles_.find(key);
        if (it != bundles_.end()) return it->second;
    }
    if (dir_.empty()) return std::nullopt;
    const auto path = fs::path(dir_) / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json doc;
    try {
        in >> doc;
        KnowledgeBundle bundle;
        bundle.disease = doc.at("disease").get<std::string>();
        bundle.entity = doc.at("entity").get<std::string>();
        bundle.positive_summary = doc.at("positive_summary").get<std::string>();
        bundle.negative_summary = doc.at("negative_summary").get<std::string>();
        bundle.source_counts.first = doc.at("source_counts").at(0).get<std::size_t>();
        bundle.source_counts.second = doc.at("source_counts").at(1).get<std::size_t>();
        // Usage stays zero: a cache hit spends no tokens.
        std::lock_guard<std::mutex> lock(mutex_);
        bundles_.emplace(key, bundle);
        return bundle;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string(), 0, std::string("bad bundle cache file: ") + e.what());
    }
}

void BundleCache::put(const std::string& key, const KnowledgeBundle& bundle) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        bundles_.emplace(key, bundle);
    }
    if (dir_.empty()) return;
    fs::create_directories(dir_);
    nlohmann::json doc;
    doc["disease"] = bundle.disease;
    doc["entity"] = bundle.entity;
    doc["positive_summary"] = bundle.positive_summary;
    doc["negative_summary"] = bundle.negative_summary;
    doc["source_counts"] = {bundle.source_counts.first, bundle.source_counts.second};
    doc["template_version"] = prompts::kTemplateVersion;
    std::ofstream out(fs::path(dir_) / (key + ".json"));
    out << doc.dump(2) << "\n";
}

}  // namespace kerap::agents
