#pragma once

#include <stdexcept>
#include <string>

namespace blaschke {

enum class ErrorKind {
  ParseError,
  InvalidArgument,
  OverflowNearSingularity,
  ApertureTooNarrow,
  InsufficientDepth,
  AlphaExcluded,
  StepTooLargeNearBoundary,
  UnsupportedVariant,
};

// Every library failure is reported through this type. kind() drives the
// CLI exit-code mapping (parse / domain / precondition) and lets the limit
// estimators tell a genuine overflow apart from a programming error.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_error(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace blaschke
