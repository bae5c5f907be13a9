#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kerap::llm {

enum class Role { System, User, Assistant };

const char* to_string(Role role);
Role role_from_string(const std::string& name);

struct ChatMessage {
    Role role = Role::User;
    std::string content;
};

struct CompletionRequest {
    std::string model;
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_tokens = 1024;
};

/// Throws InvalidInputError unless: messages nonempty, every content nonempty,
/// conversation begins with a system or user message, temperature >= 0.
void validate(const CompletionRequest& req);

struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::int64_t total_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& other) {
        prompt_tokens += other.prompt_tokens;
        completion_tokens += other.completion_tokens;
        total_tokens += other.total_tokens;
        return *this;
    }
    bool operator==(const TokenUsage&) const = default;
};

struct CompletionResult {
    std::string text;
    TokenUsage usage;
};

/// Rough chars/4 token estimate; used only where an upstream count is absent
/// (scripted backends). Recorded counts are never re-estimated.
std::int64_t approx_token_count(const std::string& text);

}  // namespace kerap::llm
