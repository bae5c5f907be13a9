#pragma once

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>

#include "kerap/llm/backend.hpp"

namespace kerap::llm {

struct GatewayLimits {
    int requests_per_minute = 0;  // 0 = unlimited
    int max_in_flight = 4;
};

/// Shared front door for all agents: applies the global rate limit and
/// in-flight bound to network backends and keeps a token ledger of every
/// completed call. Safe for concurrent callers.
class Gateway {
public:
    Gateway(std::unique_ptr<Backend> backend, GatewayLimits limits = {});

    CompletionResult complete(const CompletionRequest& req);

    TokenUsage total_usage() const;
    std::int64_t request_count() const;
    Backend& backend() { return *backend_; }

private:
    void acquire_slot();
    void release_slot();

    std::unique_ptr<Backend> backend_;
    GatewayLimits limits_;

    mutable std::mutex mutex_;
    std::condition_variable cv_;
    int in_flight_ = 0;
    std::deque<std::chrono::steady_clock::time_point> recent_;
    TokenUsage ledger_;
    std::int64_t requests_ = 0;
};

}  // namespace kerap::llm
