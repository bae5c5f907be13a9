#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kerap/kg/types.hpp"

namespace kerap::kg {

/// Rule table deciding whether a relation predicate carries positive
/// (inclusion) or negative (exclusion) knowledge. Explicit overrides win over
/// marker substrings; anything unmatched is positive. Matching is
/// case-insensitive, so the classification of a predicate equals that of its
/// lowercased form.
class PolarityLexicon {
public:
    PolarityLexicon(std::vector<std::string> negative_markers,
                    std::map<std::string, Polarity> overrides);

    /// Default markers: "not", "no_", "contraindicat", "rules out".
    static PolarityLexicon defaults();
    static PolarityLexicon load(const std::string& path);

    Polarity classify(std::string_view predicate) const;

    const std::vector<std::string>& negative_markers() const { return negative_markers_; }
    const std::map<std::string, Polarity>& overrides() const { return overrides_; }

    /// Stable content hash, used in bundle-cache keys.
    std::string content_hash() const;

private:
    std::vector<std::string> negative_markers_;        // lowercased
    std::map<std::string, Polarity> overrides_;        // keys lowercased
};

Polarity classify_polarity(std::string_view predicate, const PolarityLexicon& lexicon);

}  // namespace kerap::kg
