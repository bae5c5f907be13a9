#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kerap::util {

enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };

LogLevel log_level();
void set_log_level(LogLevel level);
LogLevel parse_log_level(std::string_view name);

/// Emit one single-line JSON record to stderr:
/// {"level":"info","msg":"...","key":"value",...}
void log(LogLevel level, std::string_view msg,
         std::vector<std::pair<std::string, std::string>> fields = {});

inline void log_info(std::string_view msg,
                     std::vector<std::pair<std::string, std::string>> fields = {}) {
    log(LogLevel::Info, msg, std::move(fields));
}
inline void log_warn(std::string_view msg,
                     std::vector<std::pair<std::string, std::string>> fields = {}) {
    log(LogLevel::Warn, msg, std::move(fields));
}
inline void log_error(std::string_view msg,
                      std::vector<std::pair<std::string, std::string>> fields = {}) {
    log(LogLevel::Error, msg, std::move(fields));
}

}  // namespace kerap::util
