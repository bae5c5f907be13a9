#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "kerap/llm/types.hpp"

namespace kerap::llm {

/// Persisted map from request fingerprint to a recorded exchange. The on-disk
/// form is JSON lines, one entry per fingerprint, bit-exact under replay.
class Cassette {
public:
    struct Entry {
        std::string model;
        std::string response;
        TokenUsage usage;
    };

    Cassette() = default;

    static Cassette load(const std::string& path);
    void save(const std::string& path) const;

    bool contains(const std::string& fingerprint) const { return entries_.count(fingerprint) > 0; }
    std::optional<Entry> get(const std::string& fingerprint) const;

    /// Inserting a different exchange under an existing fingerprint is a hard
    /// error; re-inserting the identical exchange is a no-op.
    void put(const std::string& fingerprint, Entry entry);

    std::size_t size() const { return entries_.size(); }
    TokenUsage total_usage() const;

private:
    std::unordered_map<std::string, Entry> entries_;
};

}  // namespace kerap::llm
