#include "kerap/util/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

#include "json.hpp"
#include "kerap/util/errors.hpp"

namespace kerap::util {

namespace {
std::atomic<LogLevel> g_level{LogLevel::Info};
std::mutex g_mutex;

const char* level_name(LogLevel level) {
    switch (level) {
        case LogLevel::Debug: return "debug";
        case LogLevel::Info: return "info";
        case LogLevel::Warn: return "warn";
        case LogLevel::Error: return "error";
        default: return "off";
    }
}
}  // namespace

LogLevel log_level() { return g_level.load(); }

void set_log_level(LogLevel level) { g_level.store(level); }

LogLevel parse_log_level(std::string_view name) {
    if (name == "debug") return LogLevel::Debug;
    if (name == "info") return LogLevel::Info;
    if (name == "warn") return LogLevel::Warn;
    if (name == "error") return LogLevel::Error;
    if (name == "off") return LogLevel::Off;
    throw ConfigError("unknown log level: " + std::string(name));
}

void log(LogLevel level, std::string_view msg,
         std::vector<std::pair<std::string, std::string>> fields) {
    if (level < g_level.load()) return;
    nlohmann::json record;
    record["level"] = level_name(level);
    record["msg"] = std::string(msg);
    for (auto& [key, value] : fields) record[key] = value;
    std::lock_guard<std::mutex> lock(g_mutex);
    std::cerr << record.dump() << "\n";
}

}  // namespace kerap::util
