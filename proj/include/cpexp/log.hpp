#pragma once

#include <iostream>
#include <mutex>
#include <string>

namespace cpexp {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

namespace detail {
inline LogLevel& log_threshold() {
    static LogLevel level = LogLevel::warn;
    return level;
}
inline std::mutex& log_mutex() {
    static std::mutex m;
    return m;
}
}

inline void set_log_level(LogLevel level) { detail::log_threshold() = level; }

inline void log(LogLevel level, const std::string& msg) {
    if (level < detail::log_threshold()) return;
    static const char* tag[] = {"debug", "info", "warn", "error"};
    std::lock_guard<std::mutex> lock(detail::log_mutex());
    std::cerr << "[" << tag[static_cast<int>(level)] << "] " << msg << "\n";
}

inline void log_debug(const std::string& msg) { log(LogLevel::debug, msg); }
inline void log_info(const std::string& msg) { log(LogLevel::info, msg); }
inline void log_warn(const std::string& msg) { log(LogLevel::warn, msg); }
inline void log_error(const std::string& msg) { log(LogLevel::error, msg); }

}
