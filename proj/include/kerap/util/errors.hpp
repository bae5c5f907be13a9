#pragma once

#include <stdexcept>
#include <string>

namespace kerap {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file content. Carries the source path and 1-based line.
class ParseError : public Error {
public:
    ParseError(std::string path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what),
          path_(std::move(path)),
          line_(line) {}

    const std::string& path() const { return path_; }
    std::size_t line() const { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

class InvalidStateError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Network-level failure after the retry budget is exhausted.
class TransportError : public Error {
public:
    TransportError(const std::string& what, int attempts)
        : Error(what + " (after " + std::to_string(attempts) + " attempt(s))"),
          attempts_(attempts) {}

    int attempts() const { return attempts_; }

private:
    int attempts_;
};

// Non-retryable HTTP error from the remote API (4xx other than 429).
class ApiError : public Error {
public:
    ApiError(int status, const std::string& body)
        : Error("API error " + std::to_string(status) + ": " + body), status_(status) {}

    int status() const { return status_; }

private:
    int status_;
};

class CassetteMissError : public Error {
public:
    explicit CassetteMissError(const std::string& fingerprint)
        : Error("cassette miss for fingerprint " + fingerprint), fingerprint_(fingerprint) {}

    const std::string& fingerprint() const { return fingerprint_; }

private:
    std::string fingerprint_;
};

}  // namespace kerap
