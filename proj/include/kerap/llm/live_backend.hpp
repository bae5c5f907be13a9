#pragma once

#include "kerap/llm/backend.hpp"
#include "kerap/util/http.hpp"

namespace kerap::llm {

/// HTTP client for a chat-completions endpoint: POST {prefix}/chat/completions
/// with {"model", "messages", "temperature", "max_tokens"}; the reply is read
/// from choices[0].message.content and usage.{prompt,completion,total}_tokens.
///
/// 429 and 5xx responses are retried with exponential backoff up to the
/// configured cap; other 4xx statuses fail immediately.
class LiveBackend final : public Backend {
public:
    LiveBackend(std::string base_url, std::string api_key, util::RetryPolicy retry = {});

    CompletionResult complete(const CompletionRequest& req) override;
    bool network() const override { return true; }
    std::string name() const override { return "live"; }

private:
    std::string base_url_;
    std::string api_key_;
    util::RetryPolicy retry_;
};

}  // namespace kerap::llm
