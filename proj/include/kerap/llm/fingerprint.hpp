#pragma once

#include <string>

#include "kerap/llm/types.hpp"

namespace kerap::llm {

/// Canonical serialization of (model, temperature, messages) with unit
/// separators. max_tokens is deliberately excluded: it never alters which
/// recorded exchange a request refers to.
std::string canonical_request_string(const CompletionRequest& req);

/// SHA-256 hex of the canonical string. Stable across runs and machines;
/// cassette entries are keyed by this value.
std::string fingerprint(const CompletionRequest& req);

}  // namespace kerap::llm
