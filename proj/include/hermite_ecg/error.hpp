#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace hermite_ecg {

enum class ErrorKind {
  parse,
  validation,
  window_out_of_bounds,
  inadmissible_delta,
  no_admissible_delta,
  not_found,
  numerical,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::window_out_of_bounds: return "window_out_of_bounds";
    case ErrorKind::inadmissible_delta: return "inadmissible_delta";
    case ErrorKind::no_admissible_delta: return "no_admissible_delta";
    case ErrorKind::not_found: return "not_found";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

/// Base exception for every failure raised by the library. `field` names the
/// offending input (e.g. "r_peaks[3]") when one can be identified.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::string field = {})
      : Error(ErrorKind::parse, message, std::move(field)) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : Error(ErrorKind::validation, message, std::move(field)) {}
};

class WindowOutOfBounds : public Error {
 public:
  explicit WindowOutOfBounds(const std::string& message)
      : Error(ErrorKind::window_out_of_bounds, message, "tau") {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& message, std::string field = {})
      : Error(ErrorKind::not_found, message, std::move(field)) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message)
      : Error(ErrorKind::numerical, message) {}
};

/// Raised when delta puts quadrature nodes outside the segment window.
class InadmissibleDelta : public Error {
 public:
  InadmissibleDelta(const std::string& message, double max_admissible)
      : Error(ErrorKind::inadmissible_delta, message, "delta"),
        max_admissible_(max_admissible) {}

  double max_admissible() const noexcept { return max_admissible_; }

 private:
  double max_admissible_;
};

/// Raised by the optimizer when no grid delta is admissible for the window.
class NoAdmissibleDelta : public Error {
 public:
  NoAdmissibleDelta(const std::string& message, double max_admissible)
      : Error(ErrorKind::no_admissible_delta, message, "delta0"),
        max_admissible_(max_admissible) {}

  double max_admissible() const noexcept { return max_admissible_; }

 private:
  double max_admissible_;
};

}  // namespace hermite_ecg
