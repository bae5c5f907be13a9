#include "kerap/kg/lexicon.hpp"

#include <fstream>

#include "json.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/hash.hpp"
#include "kerap/util/strings.hpp"

namespace kerap::kg {

PolarityLexicon::PolarityLexicon(std::vector<std::string> negative_markers,
                                 std::map<std::string, Polarity> overrides) {
    negative_markers_.reserve(negative_markers.size());
    for (auto& m : negative_markers) negative_markers_.push_back(util::to_lower(m));
    for (auto& [pred, pol] : overrides) overrides_.emplace(util::to_lower(pred), pol);
}

PolarityLexicon PolarityLexicon::defaults() {
    return PolarityLexicon({"not", "no_", "contraindicat", "rules out"}, {});
}

PolarityLexicon PolarityLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path, 0, std::string("invalid lexicon JSON: ") + e.what());
    }
    std::vector<std::string> markers;
    std::map<std::string, Polarity> overrides;
    for (const auto& m : doc.value("negative_markers", nlohmann::json::array())) {
        markers.push_back(m.get<std::string>());
    }
    if (doc.contains("overrides")) {
        for (const auto& [pred, value] : doc.at("overrides").items()) {
            const auto label = util::to_lower(value.get<std::string>());
            if (label == "positive") {
                overrides.emplace(pred, Polarity::Positive);
            } else if (label == "negative") {
                overrides.emplace(pred, Polarity::Negative);
            } else {
                throw ConfigError("lexicon override for '" + pred +
                                  "' must be 'positive' or 'negative', got '" + label + "'");
            }
        }
    }
    return PolarityLexicon(std::move(markers), std::move(overrides));
}

Polarity PolarityLexicon::classify(std::string_view predicate) const {
    const std::string lowered = util::to_lower(predicate);
    if (auto it = overrides_.find(lowered); it != overrides_.end()) return it->second;
    for (const auto& marker : negative_markers_) {
        if (lowered.find(marker) != std::string::npos) return Polarity::Negative;
    }
    return Polarity::Positive;
}

std::string PolarityLexicon::content_hash() const {
    std::string canon;
    for (const auto& m : negative_markers_) {
        canon += m;
        canon += '\x1e';
    }
    canon += '\x1f';
    for (const auto& [pred, pol] : overrides_) {
        canon += pred;
        canon += '=';
        canon += to_string(pol);
        canon += '\x1e';
    }
    return util::sha256_hex(canon);
}

Polarity classify_polarity(std::string_view predicate, const PolarityLexicon& lexicon) {
    return lexicon.classify(predicate);
}

}  // namespace kerap::kg
