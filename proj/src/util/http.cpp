#include "kerap/util/http.hpp"

#include <algorithm>

#include "kerap/util/errors.hpp"

namespace kerap::util {

int retry_delay_ms(const RetryPolicy& policy, int retry_index) {
    long long delay = policy.base_delay_ms;
    for (int i = 0; i < retry_index && delay < policy.max_delay_ms; ++i) delay *= 2;
    return static_cast<int>(std::min<long long>(delay, policy.max_delay_ms));
}

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

UrlParts split_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("base URL must include a scheme: " + base_url);
    }
    auto path_start = base_url.find('/', scheme_end + 3);
    UrlParts parts;
    if (path_start == std::string::npos) {
        parts.origin = base_url;
    } else {
        parts.origin = base_url.substr(0, path_start);
        parts.path_prefix = base_url.substr(path_start);
    }
    while (!parts.path_prefix.empty() && parts.path_prefix.back() == '/') {
        parts.path_prefix.pop_back();
    }
    return parts;
}

}  // namespace kerap::util
