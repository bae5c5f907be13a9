#include "kerap/kg/store.hpp"

#include <algorithm>
#include <fstream>

#include "kerap/util/errors.hpp"
#include "kerap/util/log.hpp"
#include "kerap/util/strings.hpp"

namespace kerap::kg {

namespace {

constexpr std::size_t kMaxReportedIssues = 20;

bool skippable(const std::string& line) {
    return line.empty() || line[0] == '#';
}

void note_issue(IngestReport& report, const std::string& path, std::size_t line,
                const std::string& message) {
    ++report.malformed_rows;
    if (report.issues.size() < kMaxReportedIssues) {
        report.issues.push_back({path, line, message});
    }
}

// Splits a TSV row into exactly `n` fields; nullopt when the shape is wrong.
std::optional<std::vector<std::string>> tsv_fields(const std::string& line, std::size_t n) {
    auto fields = util::split(line, '\t');
    if (fields.size() != n) return std::nullopt;
    for (auto& f : fields) f = util::trim(f);
    return fields;
}

}  // namespace

KgStore KgStore::ingest(const std::string& entity_path, const std::string& triple_path) {
    KgStore store;

    std::ifstream ents(entity_path);
    if (!ents) throw InvalidInputError("cannot open entity file: " + entity_path);
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(ents, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        if (!header_seen) {
            header_seen = true;
            if (line != "id\tname\tcategory") {
                throw ParseError(entity_path, lineno,
                                 "expected header 'id<TAB>name<TAB>category', got '" + line + "'");
            }
            continue;
        }
        auto fields = tsv_fields(line, 3);
        if (!fields || (*fields)[0].empty() || (*fields)[1].empty()) {
            note_issue(store.report_, entity_path, lineno, "malformed entity row");
            continue;
        }
        auto& id = (*fields)[0];
        if (store.index_of_.count(id)) {
            throw ParseError(entity_path, lineno, "duplicate entity id '" + id + "'");
        }
        store.index_of_.emplace(id, static_cast<std::uint32_t>(store.entities_.size()));
        store.entities_.push_back({id, (*fields)[1], (*fields)[2]});
    }
    if (!header_seen && lineno > 0) {
        // File held only comments/blank lines; treat as empty.
    }
    store.incident_.resize(store.entities_.size());

    std::ifstream trips(triple_path);
    if (!trips) throw InvalidInputError("cannot open triple file: " + triple_path);
    lineno = 0;
    header_seen = false;
    while (std::getline(trips, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        if (!header_seen) {
            header_seen = true;
            if (line != "head\tpredicate\ttail") {
                throw ParseError(triple_path, lineno,
                                 "expected header 'head<TAB>predicate<TAB>tail', got '" + line + "'");
            }
            continue;
        }
        auto fields = tsv_fields(line, 3);
        if (!fields || (*fields)[0].empty() || (*fields)[1].empty() || (*fields)[2].empty()) {
            note_issue(store.report_, triple_path, lineno, "malformed triple row");
            continue;
        }
        auto head_it = store.index_of_.find((*fields)[0]);
        auto tail_it = store.index_of_.find((*fields)[2]);
        if (head_it == store.index_of_.end() || tail_it == store.index_of_.end()) {
            ++store.report_.dangling_dropped;
            continue;
        }
        auto& predicate = (*fields)[1];
        auto pred_it = store.predicate_index_.find(predicate);
        std::uint32_t pred_idx;
        if (pred_it == store.predicate_index_.end()) {
            pred_idx = static_cast<std::uint32_t>(store.predicates_.size());
            store.predicate_index_.emplace(predicate, pred_idx);
            store.predicates_.push_back(predicate);
        } else {
            pred_idx = pred_it->second;
        }
        auto triple_idx = static_cast<std::uint32_t>(store.triples_.size());
        store.triples_.push_back({head_it->second, pred_idx, tail_it->second});
        store.incident_[head_it->second].push_back(triple_idx);
        if (tail_it->second != head_it->second) {
            store.incident_[tail_it->second].push_back(triple_idx);
        }
    }

    store.report_.entity_count = store.entities_.size();
    store.report_.triple_count = store.triples_.size();
    if (store.report_.malformed_rows > 0 || store.report_.dangling_dropped > 0) {
        util::log_warn("kg ingest skipped rows",
                       {{"malformed", std::to_string(store.report_.malformed_rows)},
                        {"dangling_dropped", std::to_string(store.report_.dangling_dropped)}});
    }
    return store;
}

const Entity& KgStore::entity(const std::string& id) const {
    auto it = index_of_.find(id);
    if (it == index_of_.end()) throw NotFoundError("unknown entity id '" + id + "'");
    return entities_[it->second];
}

std::optional<std::string> KgStore::name_of(const std::string& id) const {
    auto it = index_of_.find(id);
    if (it == index_of_.end()) return std::nullopt;
    return entities_[it->second].name;
}

RelationTriple KgStore::materialize(const TripleRec& rec) const {
    return {entities_[rec.head].id, predicates_[rec.predicate], entities_[rec.tail].id};
}

std::vector<RelationTriple> KgStore::all_triples() const {
    std::vector<RelationTriple> out;
    out.reserve(triples_.size());
    for (const auto& rec : triples_) out.push_back(materialize(rec));
    return out;
}

PolarizedNeighborhood KgStore::neighborhood(const std::string& entity_id,
                                            const PolarityLexicon& lexicon,
                                            std::size_t cap) const {
    auto it = index_of_.find(entity_id);
    if (it == index_of_.end()) throw NotFoundError("unknown entity id '" + entity_id + "'");

    PolarizedNeighborhood out;
    out.entity = entity_id;
    for (auto triple_idx : incident_[it->second]) {
        auto triple = materialize(triples_[triple_idx]);
        if (lexicon.classify(triple.predicate) == Polarity::Positive) {
            out.positive.push_back(std::move(triple));
        } else {
            out.negative.push_back(std::move(triple));
        }
    }
    auto order = [](const RelationTriple& a, const RelationTriple& b) {
        return std::tie(a.predicate, a.tail, a.head) < std::tie(b.predicate, b.tail, b.head);
    };
    std::sort(out.positive.begin(), out.positive.end(), order);
    std::sort(out.negative.begin(), out.negative.end(), order);
    if (out.positive.size() > cap) out.positive.resize(cap);
    if (out.negative.size() > cap) out.negative.resize(cap);
    return out;
}

}  // namespace kerap::kg
