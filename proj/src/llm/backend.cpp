#include "kerap/llm/backend.hpp"

#include <mutex>

#include "kerap/llm/fingerprint.hpp"
#include "kerap/util/errors.hpp"

namespace kerap::llm {

CompletionResult ReplayBackend::complete(const CompletionRequest& req) {
    validate(req);
    const auto fp = fingerprint(req);
    auto entry = cassette_.get(fp);
    if (!entry) throw CassetteMissError(fp);
    return {entry->response, entry->usage};
}

RecordBackend::RecordBackend(std::unique_ptr<Backend> inner, Cassette initial,
                             std::string cassette_path)
    : inner_(std::move(inner)),
      cassette_(std::move(initial)),
      cassette_path_(std::move(cassette_path)) {}

CompletionResult RecordBackend::complete(const CompletionRequest& req) {
    validate(req);
    const auto fp = fingerprint(req);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        if (auto entry = cassette_.get(fp)) return {entry->response, entry->usage};
    }
    auto result = inner_->complete(req);
    std::lock_guard<std::mutex> lock(mutex_);
    // Two concurrent identical requests may both reach the inner backend;
    // the first recorded exchange wins so replay stays single-valued.
    if (auto entry = cassette_.get(fp)) return {entry->response, entry->usage};
    cassette_.put(fp, {req.model, result.text, result.usage});
    return result;
}

void RecordBackend::flush() const {
    std::lock_guard<std::mutex> lock(mutex_);
    cassette_.save(cassette_path_);
}

CompletionResult ScriptedBackend::complete(const CompletionRequest& req) {
    validate(req);
    CompletionResult result;
    result.text = script_(req);
    std::string prompt_text;
    for (const auto& m : req.messages) prompt_text += m.content;
    result.usage.prompt_tokens = approx_token_count(prompt_text);
    result.usage.completion_tokens = approx_token_count(result.text);
    result.usage.total_tokens = result.usage.prompt_tokens + result.usage.completion_tokens;
    return result;
}

}  // namespace kerap::llm
