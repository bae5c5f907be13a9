#pragma once

#include "kerap/embed/provider.hpp"
#include "kerap/util/http.hpp"

namespace kerap::embed {

/// Client for an HTTP JSON embeddings endpoint: POST {prefix}/embeddings with
/// {"model": ..., "input": [...]}; vectors read from data[i].embedding.
class HttpEmbeddingProvider final : public EmbeddingProvider {
public:
    HttpEmbeddingProvider(std::string base_url, std::string model, std::string api_key,
                          std::size_t dimension, util::RetryPolicy retry = {});

    std::size_t dimension() const override { return dimension_; }
    std::string name() const override { return "http:" + model_; }
    std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;

private:
    std::string base_url_;
    std::string model_;
    std::string api_key_;
    std::size_t dimension_;
    util::RetryPolicy retry_;
};

}  // namespace kerap::embed
