#include "kerap/llm/gateway.hpp"

#include <chrono>

#include "kerap/util/errors.hpp"

namespace kerap::llm {

using Clock = std::chrono::steady_clock;

Gateway::Gateway(std::unique_ptr<Backend> backend, GatewayLimits limits)
    : backend_(std::move(backend)), limits_(limits) {
    if (!backend_) throw InvalidInputError("gateway needs a backend");
    if (limits_.max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
}

void Gateway::acquire_slot() {
    std::unique_lock<std::mutex> lock(mutex_);
    cv_.wait(lock, [&] { return in_flight_ < limits_.max_in_flight; });
    ++in_flight_;
    if (limits_.requests_per_minute > 0) {
        const auto window = std::chrono::seconds(60);
        while (true) {
            const auto now = Clock::now();
            while (!recent_.empty() && now - recent_.front() >= window) recent_.pop_front();
            if (recent_.size() < static_cast<std::size_t>(limits_.requests_per_minute)) {
                recent_.push_back(now);
                break;
            }
            const auto wake = recent_.front() + window;
            cv_.wait_until(lock, wake);
        }
    }
}

void Gateway::release_slot() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        --in_flight_;
    }
    cv_.notify_all();
}

CompletionResult Gateway::complete(const CompletionRequest& req) {
    validate(req);
    const bool limited = backend_->network();
    if (limited) acquire_slot();
    CompletionResult result;
    try {
        result = backend_->complete(req);
    } catch (...) {
        if (limited) release_slot();
        throw;
    }
    if (limited) release_slot();

    std::lock_guard<std::mutex> lock(mutex_);
    ledger_ += result.usage;
    ++requests_;
    return result;
}

TokenUsage Gateway::total_usage() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return ledger_;
}

std::int64_t Gateway::request_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return requests_;
}

}  // namespace kerap::llm
