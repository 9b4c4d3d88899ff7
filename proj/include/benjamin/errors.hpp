#pragma once

#include <stdexcept>
#include <string>

namespace benjamin {

// Input that violates an operation's precondition (bad sizes, overflow
// guards, spectral-gap conditions, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite values, failed convergence, and other numerical breakdowns.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration. Carries the 1-based source line when known
// (0 means "not tied to a line").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& origin, int line, const std::string& message)
      : std::runtime_error(format(origin, line, message)), line_(line) {}

  int line() const { return line_; }

 private:
  static std::string format(const std::string& origin, int line,
                            const std::string& message) {
    if (line > 0) return origin + ":" + std::to_string(line) + ": " + message;
    return origin + ": " + message;
  }

  int line_;
};

}  // namespace benjamin
