#pragma once

#include <string>

#include "kerap/llm/types.hpp"

namespace kerap::tools {

/// Deterministic offline responder used to record the committed cassettes.
/// Inspects the rendered prompt (never any hidden state) and produces a
/// plausible, parseable reply: a candidate number for linkage prompts, a
/// one-paragraph summary for retrieval prompts, and a YES/NO verdict with a
/// short rationale for prediction prompts.
std::string scripted_response(const llm::CompletionRequest& req);

}  // namespace kerap::tools
