#include "kerap/llm/types.hpp"

#include "kerap/util/errors.hpp"

namespace kerap::llm {

const char* to_string(Role role) {
    switch (role) {
        case Role::System: return "system";
        case Role::User: return "user";
        default: return "assistant";
    }
}

Role role_from_string(const std::string& name) {
    if (name == "system") return Role::System;
    if (name == "user") return Role::User;
    if (name == "assistant") return Role::Assistant;
    throw InvalidInputError("unknown chat role: " + name);
}

void validate(const CompletionRequest& req) {
    if (req.model.empty()) throw InvalidInputError("completion request needs a model");
    if (req.messages.empty()) throw InvalidInputError("completion request needs messages");
    if (req.messages.front().role == Role::Assistant) {
        throw InvalidInputError("conversation must begin with a system or user message");
    }
    for (const auto& m : req.messages) {
        if (m.content.empty()) throw InvalidInputError("chat message content must be nonempty");
    }
    if (req.temperature < 0.0) throw InvalidInputError("temperature must be >= 0");
    if (req.max_tokens <= 0) throw InvalidInputError("max_tokens must be positive");
}

std::int64_t approx_token_count(const std::string& text) {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

}  // namespace kerap::llm
