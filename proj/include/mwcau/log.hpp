#pragma once

// Minimal stderr logger for the command-line driver. The level comes from
// the MWCAU_LOG environment variable: off | error | info | debug (default
// error). Library headers never log; only the CLI does.

#include <cstdlib>
#include <iostream>
#include <string>

namespace mwcau {

enum class LogLevel { Off = 0, Error = 1, Info = 2, Debug = 3 };

inline LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("MWCAU_LOG");
        std::string v = env ? env : "error";
        if (v == "off") return LogLevel::Off;
        if (v == "info") return LogLevel::Info;
        if (v == "debug") return LogLevel::Debug;
        return LogLevel::Error;
    }();
    return level;
}

inline void log(LogLevel at, const std::string& msg) {
    static const char* tags[] = {"", "error", "info", "debug"};
    if (static_cast<int>(at) <= static_cast<int>(log_level()) && at != LogLevel::Off)
        std::cerr << "[" << tags[static_cast<int>(at)] << "] " << msg << "\n";
}

inline void log_error(const std::string& msg) { log(LogLevel::Error, msg); }
inline void log_info(const std::string& msg) { log(LogLevel::Info, msg); }
inline void log_debug(const std::string& msg) { log(LogLevel::Debug, msg); }

}  // namespace mwcau
