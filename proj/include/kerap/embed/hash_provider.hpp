#pragma once

#include <cstdint>

#include "kerap/embed/provider.hpp"

namespace kerap::embed {

/// Deterministic pseudo-embedding provider for offline runs and tests.
///
/// Component i of the vector for text t is derived purely from 64-bit integer
/// mixing of (seed, fnv1a64(t), i) and is therefore bit-identical on every
/// platform. Vectors carry no semantic signal, but identical texts always map
/// to identical vectors (cosine 1), which is what the deterministic fixtures
/// rely on.
class HashEmbeddingProvider final : public EmbeddingProvider {
public:
    explicit HashEmbeddingProvider(std::uint64_t seed = 0, std::size_t dimension = 768);

    std::size_t dimension() const override { return dimension_; }
    std::string name() const override;
    std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

private:
    std::uint64_t seed_;
    std::size_t dimension_;
};

}  // namespace kerap::embed
