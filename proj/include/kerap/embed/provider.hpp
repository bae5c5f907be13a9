#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace kerap::embed {

using EmbeddingVector = std::vector<float>;

/// Source of fixed-dimension text embeddings. Implementations must be
/// deterministic for a fixed provider instance and input text.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    virtual std::size_t dimension() const = 0;
    virtual std::string name() const = 0;

    /// One vector per input, each of length dimension(). Throws
    /// InvalidInputError on empty text, TransportError on backend failure.
    virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;

    EmbeddingVector embed_one(const std::string& text);
};

}  // namespace kerap::embed
