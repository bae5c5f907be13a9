#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>

#include "kerap/llm/cassette.hpp"
#include "kerap/llm/types.hpp"

namespace kerap::llm {

class Backend {
public:
    virtual ~Backend() = default;
    virtual CompletionResult complete(const CompletionRequest& req) = 0;
    /// True when complete() performs network I/O (rate limiting applies).
    virtual bool network() const = 0;
    virtual std::string name() const = 0;
};

/// Serves recorded exchanges only; never touches the network. A request whose
/// fingerprint is absent raises CassetteMissError.
class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(Cassette cassette) : cassette_(std::move(cassette)) {}

    CompletionResult complete(const CompletionRequest& req) override;
    bool network() const override { return false; }
    std::string name() const override { return "replay"; }

    const Cassette& cassette() const { return cassette_; }

private:
    Cassette cassette_;
};

/// Delegates to an inner backend and appends each new exchange to a cassette
/// file. A request already present is served from the cassette, keeping
/// recording idempotent.
class RecordBackend final : public Backend {
public:
    RecordBackend(std::unique_ptr<Backend> inner, Cassette initial, std::string cassette_path);

    CompletionResult complete(const CompletionRequest& req) override;
    bool network() const override { return inner_->network(); }
    std::string name() const override { return "record(" + inner_->name() + ")"; }

    const Cassette& cassette() const { return cassette_; }
    void flush() const;

private:
    std::unique_ptr<Backend> inner_;
    mutable std::mutex mutex_;
    Cassette cassette_;
    std::string cassette_path_;
};

/// Computes a response with a user-supplied function. Used by fixture
/// generation and tests; deterministic as long as the function is.
class ScriptedBackend final : public Backend {
public:
    using Script = std::function<std::string(const CompletionRequest&)>;

    explicit ScriptedBackend(Script script) : script_(std::move(script)) {}

    CompletionResult complete(const CompletionRequest& req) override;
    bool network() const override { return false; }
    std::string name() const override { return "scripted"; }

private:
    Script script_;
};

}  // namespace kerap::llm
