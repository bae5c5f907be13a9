#include "kerap/agents/linkage.hpp"

#include <algorithm>
#include <cctype>

#include "kerap/prompts/templates.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/strings.hpp"

namespace kerap::agents {

std::optional<std::size_t> parse_selection(const std::string& response,
                                           const std::vector<std::string>& candidate_names) {
    std::string text = util::trim(response);
    // Strip wrapping punctuation so "2.", "(2)" and "#2" parse as indices.
    auto is_wrap = [](char c) {
        return std::ispunct(static_cast<unsigned char>(c)) != 0;
    };
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_wrap(text[b])) ++b;
    while (e > b && is_wrap(text[e - 1])) --e;
    const std::string core = util::trim(text.substr(b, e - b));

    if (!core.empty() && core.size() <= 9 &&
        std::all_of(core.begin(), core.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; })) {
        const auto number = std::stoull(core);
        if (number >= 1 && number <= candidate_names.size()) return number - 1;
        return std::nullopt;
    }
    for (std::size_t i = 0; i < candidate_names.size(); ++i) {
        if (util::iequals(text, candidate_names[i]) || util::iequals(core, candidate_names[i])) {
            return i;
        }
    }
    return std::nullopt;
}

LinkResult link(llm::Gateway& gateway, const kg::KgStore& store,
                const embed::EmbeddingIndex& index, const std::string& mention,
                const LinkageConfig& cfg) {
    if (mention.empty()) throw InvalidInputError("link: mention must be nonempty");

    LinkResult result;
    result.mention = mention;
    result.candidates = index.top_candidates(mention, cfg.linker);

    std::vector<std::string> names;
    names.reserve(result.candidates.size());
    for (const auto& c : result.candidates) names.push_back(store.entity(c.entity).name);

    if (result.candidates.size() == 1) {
        result.chosen = result.candidates.front().entity;
        result.rank_of_chosen = 1;
        return result;
    }

    llm::CompletionRequest req;
    req.model = cfg.model;
    req.temperature = cfg.temperature;
    req.max_tokens = cfg.max_tokens;
    req.messages = {{llm::Role::System, prompts::linkage_system()},
                    {llm::Role::User, prompts::linkage_user(mention, names)}};

    auto first = gateway.complete(req);
    result.usage += first.usage;
    result.transcript = req.messages;
    result.transcript.push_back({llm::Role::Assistant, first.text});

    auto selection = parse_selection(first.text, names);
    if (!selection) {
        req.messages.push_back({llm::Role::Assistant, first.text});
        req.messages.push_back({llm::Role::User, prompts::linkage_reask()});
        auto second = gateway.complete(req);
        result.usage += second.usage;
        result.transcript.push_back({llm::Role::User, prompts::linkage_reask()});
        result.transcript.push_back({llm::Role::Assistant, second.text});
        selection = parse_selection(second.text, names);
        if (!selection) {
            selection = 0;  // rank-1 candidate
            result.fallback = true;
        }
    }
    result.chosen = result.candidates[*selection].entity;
    result.rank_of_chosen = *selection + 1;
    return result;
}

std::optional<LinkResult> LinkCache::get(const std::string& mention) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = results_.find(mention);
    if (it == results_.end()) return std::nullopt;
    return it->second;
}

void LinkCache::put(const std::string& mention, LinkResult result) {
    std::lock_guard<std::mutex> lock(mutex_);
    results_.emplace(mention, std::move(result));
}

}  // namespace kerap::agents
