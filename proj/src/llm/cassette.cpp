#include "kerap/llm/cassette.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "kerap/util/errors.hpp"

namespace kerap::llm {

Cassette Cassette::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open cassette: " + path);
    Cassette cassette;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
            Entry entry;
            entry.model = doc.value("model", "");
            entry.response = doc.at("response").get<std::string>();
            const auto& usage = doc.at("usage");
            entry.usage.prompt_tokens = usage.at("prompt_tokens").get<std::int64_t>();
            entry.usage.completion_tokens = usage.at("completion_tokens").get<std::int64_t>();
            entry.usage.total_tokens = usage.at("total_tokens").get<std::int64_t>();
            cassette.put(doc.at("fingerprint").get<std::string>(), std::move(entry));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path, lineno, std::string("bad cassette entry: ") + e.what());
        }
    }
    return cassette;
}

void Cassette::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open cassette for writing: " + path);
    std::vector<const std::unordered_map<std::string, Entry>::value_type*> sorted;
    sorted.reserve(entries_.size());
    for (const auto& kv : entries_) sorted.push_back(&kv);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    for (const auto* kv : sorted) {
        nlohmann::json doc;
        doc["fingerprint"] = kv->first;
        doc["model"] = kv->second.model;
        doc["response"] = kv->second.response;
        doc["usage"] = {{"prompt_tokens", kv->second.usage.prompt_tokens},
                        {"completion_tokens", kv->second.usage.completion_tokens},
                        {"total_tokens", kv->second.usage.total_tokens}};
        out << doc.dump() << "\n";
    }
}

std::optional<Cassette::Entry> Cassette::get(const std::string& fingerprint) const {
    auto it = entries_.find(fingerprint);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void Cassette::put(const std::string& fingerprint, Entry entry) {
    auto it = entries_.find(fingerprint);
    if (it != entries_.end()) {
        if (it->second.response != entry.response || !(it->second.usage == entry.usage)) {
            throw InvalidStateError("cassette fingerprint collision with differing content: " +
                                    fingerprint);
        }
        return;
    }
    entries_.emplace(fingerprint, std::move(entry));
}

TokenUsage Cassette::total_usage() const {
    TokenUsage total;
    for (const auto& [_, entry] : entries_) total += entry.usage;
    return total;
}

}  // namespace kerap::llm
