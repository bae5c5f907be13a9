#include "kerap/embed/http_provider.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/log.hpp"

namespace kerap::embed {

HttpEmbeddingProvider::HttpEmbeddingProvider(std::string base_url, std::string model,
                                             std::string api_key, std::size_t dimension,
                                             util::RetryPolicy retry)
    : base_url_(std::move(base_url)),
      model_(std::move(model)),
      api_key_(std::move(api_key)),
      dimension_(dimension),
      retry_(retry) {
    if (dimension_ == 0) throw InvalidInputError("embedding dimension must be >= 1");
}

std::vector<EmbeddingVector> HttpEmbeddingProvider::embed(std::span<const std::string> texts) {
    for (const auto& text : texts) {
        if (text.empty()) throw InvalidInputError("cannot embed empty text");
    }
    if (texts.empty()) return {};

    nlohmann::json body;
    body["model"] = model_;
    body["input"] = std::vector<std::string>(texts.begin(), texts.end());
    const std::string payload = body.dump();

    const auto parts = util::split_url(base_url_);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    int attempts = 0;
    for (int retry = 0;; ++retry) {
        ++attempts;
        auto res = client.Post(parts.path_prefix + "/embeddings", headers, payload,
                               "application/json");
        if (res && res->status == 200) {
            nlohmann::json doc;
            try {
                doc = nlohmann::json::parse(res->body);
                const auto& data = doc.at("data");
                std::vector<EmbeddingVector> out;
                out.reserve(data.size());
                for (const auto& item : data) {
                    auto vec = item.at("embedding").get<EmbeddingVector>();
                    if (vec.size() != dimension_) {
                        throw InvalidStateError("embedding dimension " +
                                                std::to_string(vec.size()) + " != declared " +
                                                std::to_string(dimension_));
                    }
                    out.push_back(std::move(vec));
                }
                if (out.size() != texts.size()) {
                    throw InvalidStateError("embeddings response count mismatch");
                }
                return out;
            } catch (const nlohmann::json::exception& e) {
                throw TransportError(std::string("bad embeddings response: ") + e.what(),
                                     attempts);
            }
        }
        const bool transport_failure = !res;
        const int status = res ? res->status : 0;
        if (!transport_failure && !util::retryable_status(status)) {
            throw ApiError(status, res->body);
        }
        if (retry >= retry_.max_retries) {
            throw TransportError(transport_failure
                                     ? "embeddings endpoint unreachable"
                                     : "embeddings endpoint returned " + std::to_string(status),
                                 attempts);
        }
        const int delay = util::retry_delay_ms(retry_, retry);
        util::log_warn("retrying embeddings call",
                       {{"status", std::to_string(status)}, {"delay_ms", std::to_string(delay)}});
        std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
}

}  // namespace kerap::embed
