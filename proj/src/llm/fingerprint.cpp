#include "kerap/llm/fingerprint.hpp"

#include <cstdio>

#include "kerap/util/hash.hpp"

namespace kerap::llm {

std::string canonical_request_string(const CompletionRequest& req) {
    char temp[32];
    std::snprintf(temp, sizeof(temp), "%.6g", req.temperature);

    std::string canon;
    canon.reserve(64 + req.messages.size() * 64);
    canon += req.model;
    canon += '\x1f';
    canon += temp;
    canon += '\x1f';
    for (const auto& m : req.messages) {
        canon += to_string(m.role);
        canon += '\x1e';
        canon += m.content;
        canon += '\x1f';
    }
    return canon;
}

std::string fingerprint(const CompletionRequest& req) {
    return util::sha256_hex(canonical_request_string(req));
}

}  // namespace kerap::llm
