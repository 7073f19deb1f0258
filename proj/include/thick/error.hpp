#pragma once

#include <stdexcept>
#include <string>

namespace thick {

enum class ErrorKind {
  MalformedSimplex,
  Range,
  NotFound,
  DimensionMismatch,
  DegenerateSimplex,
  DegenerateLink,
  Parameter,
  Saturation,
  InvalidEmbedding,
  Disconnected,
  Spec,
  Parse,
  Io,
  StudyAborted,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception. Every failure path raises one of these with a kind
/// the CLI maps onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when random placement cannot satisfy its constraints; carries a
/// description of the last violated constraint.
class SaturationError : public Error {
 public:
  SaturationError(const std::string& message, std::string constraint)
      : Error(ErrorKind::Saturation, message), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace thick
