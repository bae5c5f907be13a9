#include "kerap/embed/hash_provider.hpp"

#include "kerap/util/errors.hpp"
#include "kerap/util/hash.hpp"

namespace kerap::embed {

EmbeddingVector EmbeddingProvider::embed_one(const std::string& text) {
    std::vector<std::string> one{text};
    return embed(one).front();
}

HashEmbeddingProvider::HashEmbeddingProvider(std::uint64_t seed, std::size_t dimension)
    : seed_(seed), dimension_(dimension) {
    if (dimension_ == 0) throw InvalidInputError("embedding dimension must be >= 1");
}

std::string HashEmbeddingProvider::name() const {
    return "hash-" + std::to_string(dimension_) + "-seed" + std::to_string(seed_);
}

std::vector<EmbeddingVector> HashEmbeddingProvider::embed(std::span<const std::string> texts) {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        if (text.empty()) throw InvalidInputError("cannot embed empty text");
        const std::uint64_t base = util::splitmix64(seed_ ^ util::fnv1a64(text));
        EmbeddingVector vec(dimension_);
        for (std::size_t i = 0; i < dimension_; ++i) {
            const std::uint64_t h = util::splitmix64(base + i);
            vec[i] = static_cast<float>(util::unit_interval_signed(h));
        }
        out.push_back(std::move(vec));
    }
    return out;
}

}  // namespace kerap::embed
