#pragma once

#include <stdexcept>
#include <string>

namespace gcg {

// Invalid configuration detected before any work is done (bad key, bad
// value, inconsistent dimensions).  Messages name the offending field.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// File-level failures: unreadable paths, malformed CSV / checkpoint data.
// Messages carry the path and, where meaningful, a line number.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training diverged or produced non-finite values.
struct TrainingError : std::runtime_error {
  explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gcg
