#pragma once
// Stderr logging. Level comes from the IDRKIT_LOG environment variable
// (debug|info|warn|error); default info.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

namespace idr {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("IDRKIT_LOG");
        if (!env) return LogLevel::info;
        std::string_view v(env);
        if (v == "debug") return LogLevel::debug;
        if (v == "warn") return LogLevel::warn;
        if (v == "error") return LogLevel::error;
        return LogLevel::info;
    }();
    return level;
}

inline void log_at(LogLevel level, const char* tag, const std::string& message) {
    if (level < log_level()) return;
    std::fprintf(stderr, "[%s] %s\n", tag, message.c_str());
}

inline void log_debug(const std::string& m) { log_at(LogLevel::debug, "debug", m); }
inline void log_info(const std::string& m) { log_at(LogLevel::info, "info", m); }
inline void log_warn(const std::string& m) { log_at(LogLevel::warn, "warn", m); }
inline void log_error(const std::string& m) { log_at(LogLevel::error, "error", m); }

}  // namespace idr
