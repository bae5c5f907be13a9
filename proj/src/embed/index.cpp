#include "kerap/embed/index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kerap/util/errors.hpp"

namespace kerap::embed {

namespace {

double dot_f(const float* a, const float* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(a[i]) * b[i];
    return acc;
}

double norm_f(const float* a, std::size_t n) { return std::sqrt(dot_f(a, a, n)); }

}  // namespace

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) {
        throw InvalidInputError("cosine: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
    }
    if (a.empty()) throw InvalidInputError("cosine: empty vectors");
    const double na = norm_f(a.data(), a.size());
    const double nb = norm_f(b.data(), b.size());
    if (na == 0.0 || nb == 0.0) throw InvalidInputError("cosine: all-zero vector");
    const double sim = dot_f(a.data(), b.data(), a.size()) / (na * nb);
    return std::clamp(sim, 0.0, 1.0);
}

EmbeddingIndex::EmbeddingIndex(const std::vector<kg::Entity>& entities,
                               std::shared_ptr<EmbeddingProvider> provider,
                               std::size_t batch_size)
    : provider_(std::move(provider)), dimension_(provider_->dimension()) {
    ids_.reserve(entities.size());
    matrix_.reserve(entities.size() * dimension_);
    norms_.reserve(entities.size());

    std::vector<std::string> batch;
    batch.reserve(batch_size);
    auto flush = [&] {
        if (batch.empty()) return;
        auto vectors = provider_->embed(batch);
        for (const auto& vec : vectors) {
            const double norm = norm_f(vec.data(), vec.size());
            if (norm == 0.0) {
                throw InvalidStateError("provider returned an all-zero embedding");
            }
            matrix_.insert(matrix_.end(), vec.begin(), vec.end());
            norms_.push_back(norm);
        }
        batch.clear();
    };
    for (const auto& entity : entities) {
        ids_.push_back(entity.id);
        batch.push_back(entity.name);
        if (batch.size() >= batch_size) flush();
    }
    flush();
}

std::vector<LinkCandidate> EmbeddingIndex::top_candidates(const std::string& mention,
                                                          const LinkerConfig& cfg) const {
    if (ids_.empty()) throw InvalidStateError("top_candidates on an empty index");
    if (cfg.candidate_count == 0) throw InvalidInputError("candidate_count must be >= 1");

    const auto query = provider_->embed_one(mention);
    const double query_norm = norm_f(query.data(), query.size());
    if (query_norm == 0.0) throw InvalidInputError("mention embedded to an all-zero vector");

    const std::size_t n = ids_.size();
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double sim =
            dot_f(query.data(), matrix_.data() + i * dimension_, dimension_) /
            (query_norm * norms_[i]);
        scores[i] = std::clamp(sim, 0.0, 1.0);
    }

    const std::size_t k = std::min(cfg.candidate_count, n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto better = [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return ids_[a] < ids_[b];
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                      order.end(), better);

    std::vector<LinkCandidate> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back({ids_[order[i]], scores[order[i]]});
    return out;
}

}  // namespace kerap::embed
