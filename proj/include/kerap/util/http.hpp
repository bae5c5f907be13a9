#pragma once

#include <string>

namespace kerap::util {

struct RetryPolicy {
    int max_retries = 3;        // retries after the first attempt
    int base_delay_ms = 250;    // doubled per retry
    int max_delay_ms = 4000;
};

int retry_delay_ms(const RetryPolicy& policy, int retry_index);

/// True for 429 and any 5xx; other 4xx are never retried.
bool retryable_status(int status);

struct UrlParts {
    std::string origin;       // scheme://host[:port]
    std::string path_prefix;  // "" or "/v1" etc., no trailing slash
};

UrlParts split_url(const std::string& base_url);

}  // namespace kerap::util
