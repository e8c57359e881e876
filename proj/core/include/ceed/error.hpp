#pragma once

#include <stdexcept>
#include <string>

namespace ceed {

// Process exit codes used by the command line front end.
enum class ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kEmptyCorpus = 3,
  kNoBurst = 4,
  kNoEvents = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ExitCode::kConfigError, what) {}
};

class EmptyWindowError : public Error {
 public:
  EmptyWindowError() : Error(ExitCode::kEmptyCorpus, "empty window") {}
};

class NoBurstError : public Error {
 public:
  NoBurstError() : Error(ExitCode::kNoBurst, "no burst activity in window") {}
};

class NoEventsError : public Error {
 public:
  NoEventsError() : Error(ExitCode::kNoEvents, "no events survived clustering") {}
};

}  // namespace ceed
