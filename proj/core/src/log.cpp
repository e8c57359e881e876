#include "ceed/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace ceed::log {
namespace {

Level parse_level(const char* env) {
  if (env == nullptr) return Level::kWarn;
  const std::string v(env);
  if (v == "debug") return Level::kDebug;
  if (v == "info") return Level::kInfo;
  if (v == "warn" || v == "warning") return Level::kWarn;
  if (v == "error") return Level::kError;
  if (v == "off" || v == "none") return Level::kOff;
  return Level::kWarn;
}

std::atomic<int>& level_slot() {
  static std::atomic<int> slot{static_cast<int>(parse_level(std::getenv("CEED_LOG")))};
  return slot;
}

const char* tag(Level level) {
  switch (level) {
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarn: return "warn";
    case Level::kError: return "error";
    default: return "";
  }
}

}  // namespace

Level threshold() { return static_cast<Level>(level_slot().load()); }

void set_threshold(Level level) { level_slot().store(static_cast<int>(level)); }

bool enabled(Level level) {
  return level != Level::kOff && static_cast<int>(level) >= level_slot().load();
}

void write(Level level, std::string_view message) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[ceed " << tag(level) << "] " << message << '\n';
}

}  // namespace ceed::log
