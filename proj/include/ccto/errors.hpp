#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ccto {

/// Caller broke an operation's precondition (bad vertex id, invalid walk, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver's structural precondition does not hold on this instance.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance exceeds a configured size cap of an exponential routine.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ccto
