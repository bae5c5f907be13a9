#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kerap/embed/provider.hpp"
#include "kerap/kg/types.hpp"

namespace kerap::embed {

/// Candidate KG entity for a mention, scored by clamped cosine similarity.
struct LinkCandidate {
    std::string entity;  // entity id
    double score = 0.0;  // in [0, 1]
};

struct LinkerConfig {
    std::size_t candidate_count = 10;  // top-LC candidates
    std::string provider = "hash";
};

/// Cosine similarity clamped to [0, 1]: true cosine in [-1, 0) ties at 0.
/// Throws InvalidInputError on dimension mismatch or an all-zero vector.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

/// Exact exhaustive-scan similarity index over KG entity names. Norms are
/// precomputed at build time; queries never approximate, so results equal the
/// brute-force ranking by construction. Immutable after build; concurrent
/// queries are safe.
class EmbeddingIndex {
public:
    EmbeddingIndex(const std::vector<kg::Entity>& entities,
                   std::shared_ptr<EmbeddingProvider> provider,
                   std::size_t batch_size = 256);

    std::size_t size() const { return ids_.size(); }
    std::size_t dimension() const { return dimension_; }
    EmbeddingProvider& provider() const { return *provider_; }

    /// min(LC, size()) candidates sorted by score descending, ties broken by
    /// entity id ascending. Throws InvalidStateError when the index is empty.
    std::vector<LinkCandidate> top_candidates(const std::string& mention,
                                              const LinkerConfig& cfg) const;

private:
    std::shared_ptr<EmbeddingProvider> provider_;
    std::size_t dimension_ = 0;
    std::vector<std::string> ids_;
    std::vector<float> matrix_;        // size() x dimension(), row-major
    std::vector<double> norms_;
};

}  // namespace kerap::embed
