#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace kerap::util {

/// Hex-encoded SHA-256 digest. Stable across platforms; used for request
/// fingerprints and cache keys that end up in committed files.
std::string sha256_hex(std::string_view data);

// Small deterministic integer mixers for the pseudo-embedding provider and
// scripted fixtures. Fixed algorithms, never platform-dependent.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Map a 64-bit hash to a double in [-1, 1) using the top 53 bits.
constexpr double unit_interval_signed(std::uint64_t h) {
    return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

}  // namespace kerap::util
