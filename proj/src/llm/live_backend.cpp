#include "kerap/llm/live_backend.hpp"

#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "kerap/util/errors.hpp"
#include "kerap/util/log.hpp"

namespace kerap::llm {

LiveBackend::LiveBackend(std::string base_url, std::string api_key, util::RetryPolicy retry)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)), retry_(retry) {}

CompletionResult LiveBackend::complete(const CompletionRequest& req) {
    validate(req);

    nlohmann::json body;
    body["model"] = req.model;
    body["temperature"] = req.temperature;
    body["max_tokens"] = req.max_tokens;
    auto& messages = body["messages"] = nlohmann::json::array();
    for (const auto& m : req.messages) {
        messages.push_back({{"role", to_string(m.role)}, {"content", m.content}});
    }
    const std::string payload = body.dump();

    const auto parts = util::split_url(base_url_);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(300);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    int attempts = 0;
    for (int retry = 0;; ++retry) {
        ++attempts;
        auto res = client.Post(parts.path_prefix + "/chat/completions", headers, payload,
                               "application/json");
        if (res && res->status == 200) {
            try {
                auto doc = nlohmann::json::parse(res->body);
                CompletionResult result;
                result.text =
                    doc.at("choices").at(0).at("message").at("content").get<std::string>();
                if (doc.contains("usage")) {
                    const auto& usage = doc["usage"];
                    result.usage.prompt_tokens = usage.value("prompt_tokens", std::int64_t{0});
                    result.usage.completion_tokens =
                        usage.value("completion_tokens", std::int64_t{0});
                    result.usage.total_tokens = usage.value(
                        "total_tokens",
                        result.usage.prompt_tokens + result.usage.completion_tokens);
                }
                return result;
            } catch (const nlohmann::json::exception& e) {
                throw TransportError(std::string("bad chat-completions response: ") + e.what(),
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
                                     ? "chat-completions endpoint unreachable"
                                     : "chat-completions endpoint returned " +
                                           std::to_string(status),
                                 attempts);
        }
        const int delay = util::retry_delay_ms(retry_, retry);
        util::log_warn("retrying chat completion",
                       {{"status", std::to_string(status)}, {"delay_ms", std::to_string(delay)}});
        std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
}

}  // namespace kerap::llm
