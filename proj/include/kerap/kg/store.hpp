#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kerap/kg/lexicon.hpp"
#include "kerap/kg/types.hpp"

namespace kerap::kg {

/// A recoverable problem found during ingest (row skipped, ingest continued).
struct IngestIssue {
    std::string path;
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct IngestReport {
    std::size_t entity_count = 0;
    std::size_t triple_count = 0;
    std::size_t dangling_dropped = 0;
    std::size_t malformed_rows = 0;
    std::vector<IngestIssue> issues;  // capped sample of malformed rows
};

/// Immutable multi-relational knowledge graph. Built once from tab-separated
/// entity and triple files; afterwards safe for concurrent readers.
///
/// Triples are stored with interned entity indices and predicate labels so a
/// multi-million-triple ingest stays within a desk-scale memory budget.
class KgStore {
public:
    static constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

    /// Streams both files. Malformed rows are skipped and reported in the
    /// IngestReport; triples whose head or tail does not resolve are dropped
    /// and counted. A duplicate entity id is a hard error.
    static KgStore ingest(const std::string& entity_path, const std::string& triple_path);

    const IngestReport& report() const { return report_; }
    std::size_t entity_count() const { return entities_.size(); }
    std::size_t triple_count() const { return triples_.size(); }
    const std::vector<Entity>& entities() const { return entities_; }

    bool has_entity(const std::string& id) const { return index_of_.count(id) > 0; }
    const Entity& entity(const std::string& id) const;
    std::optional<std::string> name_of(const std::string& id) const;

    /// All stored triples, materialized with entity id strings.
    std::vector<RelationTriple> all_triples() const;

    /// Incident triples of `entity_id` (as head or tail), classified by the
    /// lexicon, each polarity list ordered by (predicate, tail, head) and
    /// truncated to `cap`.
    PolarizedNeighborhood neighborhood(const std::string& entity_id,
                                       const PolarityLexicon& lexicon,
                                       std::size_t cap = kNoCap) const;

private:
    struct TripleRec {
        std::uint32_t head;
        std::uint32_t predicate;
        std::uint32_t tail;
    };

    KgStore() = default;
    RelationTriple materialize(const TripleRec& rec) const;

    std::vector<Entity> entities_;
    std::unordered_map<std::string, std::uint32_t> index_of_;
    std::vector<std::string> predicates_;
    std::unordered_map<std::string, std::uint32_t> predicate_index_;
    std::vector<TripleRec> triples_;
    std::vector<std::vector<std::uint32_t>> incident_;  // entity idx -> triple idxs
    IngestReport report_;
};

}  // namespace kerap::kg
