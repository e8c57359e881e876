#pragma once

#include <sstream>
#include <string>
#include <string_view>

namespace ceed::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };

// Reads CEED_LOG (debug|info|warn|error|off) once; defaults to warn.
Level threshold();
void set_threshold(Level level);
bool enabled(Level level);
void write(Level level, std::string_view message);

template <typename... Args>
void emit(Level level, const Args&... args) {
  if (!enabled(level)) return;
  std::ostringstream os;
  (os << ... << args);
  write(level, os.str());
}

template <typename... Args>
void debug(const Args&... args) { emit(Level::kDebug, args...); }
template <typename... Args>
void info(const Args&... args) { emit(Level::kInfo, args...); }
template <typename... Args>
void warn(const Args&... args) { emit(Level::kWarn, args...); }
template <typename... Args>
void error(const Args&... args) { emit(Level::kError, args...); }

}  // namespace ceed::log
