#include "kerap/cohort/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <unordered_set>

#include "json.hpp"
#include "kerap/util/errors.hpp"

namespace kerap::cohortio {

std::size_t Cohort::labeled_count() const {
    return static_cast<std::size_t>(
        std::count_if(visits.begin(), visits.end(),
                      [](const PatientVisit& v) { return v.label.has_value(); }));
}

std::size_t Cohort::positive_count() const {
    return static_cast<std::size_t>(
        std::count_if(visits.begin(), visits.end(),
                      [](const PatientVisit& v) { return v.label.value_or(false); }));
}

std::optional<double> Cohort::prevalence() const {
    const auto labeled = labeled_count();
    if (labeled == 0) return std::nullopt;
    return static_cast<double>(positive_count()) / static_cast<double>(labeled);
}

Cohort load_cohort(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open cohort file: " + path);

    Cohort cohort;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path, lineno, std::string("invalid JSON: ") + e.what());
        }
        if (!header_seen) {
            if (!doc.contains("disease") || !doc["disease"].is_string() ||
                doc["disease"].get<std::string>().empty()) {
                throw ParseError(path, lineno, "first line must be {\"disease\": \"<mention>\"}");
            }
            cohort.disease = doc["disease"].get<std::string>();
            header_seen = true;
            continue;
        }
        PatientVisit visit;
        try {
            visit.visit_id = doc.at("visit_id").get<std::string>();
            visit.attributes = doc.at("attributes").get<std::vector<std::string>>();
            if (doc.contains("label") && !doc["label"].is_null()) {
                visit.label = doc["label"].get<bool>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path, lineno, std::string("malformed visit: ") + e.what());
        }
        if (visit.visit_id.empty()) throw ParseError(path, lineno, "visit_id must be nonempty");
        if (visit.attributes.empty()) {
            throw ParseError(path, lineno,
                             "visit '" + visit.visit_id + "' has an empty attribute list");
        }
        if (!seen_ids.insert(visit.visit_id).second) {
            throw ParseError(path, lineno, "duplicate visit_id '" + visit.visit_id + "'");
        }
        cohort.visits.push_back(std::move(visit));
    }
    if (!header_seen) throw ParseError(path, lineno ? lineno : 1, "missing disease header line");
    return cohort;
}

void write_cohort(const Cohort& cohort, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open cohort file for writing: " + path);
    out << nlohmann::json{{"disease", cohort.disease}}.dump() << "\n";
    for (const auto& visit : cohort.visits) {
        nlohmann::json doc;
        doc["visit_id"] = visit.visit_id;
        doc["attributes"] = visit.attributes;
        doc["label"] = visit.label.has_value() ? nlohmann::json(*visit.label) : nullptr;
        out << doc.dump() << "\n";
    }
}

Cohort synth_cohort(std::uint64_t seed, std::size_t n, double prevalence,
                    const std::vector<std::string>& vocab, const std::string& disease) {
    if (vocab.empty()) throw InvalidInputError("synth_cohort needs a nonempty vocabulary");
    if (prevalence < 0.0 || prevalence > 1.0) {
        throw InvalidInputError("prevalence must be within [0, 1]");
    }

    Cohort cohort;
    cohort.disease = disease;
    cohort.visits.reserve(n);

    const auto positives = static_cast<std::size_t>(
        std::llround(prevalence * static_cast<double>(n)));
    std::vector<bool> labels(n, false);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(positives), true);

    std::mt19937_64 rng(seed);
    std::shuffle(labels.begin(), labels.end(), rng);

    std::uniform_int_distribution<std::size_t> attr_count(3, 7);
    std::uniform_int_distribution<std::size_t> attr_pick(0, vocab.size() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        PatientVisit visit;
        char id[16];
        std::snprintf(id, sizeof(id), "V%05zu", i + 1);
        visit.visit_id = id;
        const auto count = std::min(attr_count(rng), vocab.size());
        std::unordered_set<std::size_t> used;
        while (visit.attributes.size() < count) {
            const auto pick = attr_pick(rng);
            if (used.insert(pick).second) visit.attributes.push_back(vocab[pick]);
        }
        visit.label = labels[i];
        cohort.visits.push_back(std::move(visit));
    }
    return cohort;
}

}  // namespace kerap::cohortio
