#pragma once

#include <stdexcept>
#include <string>

namespace trish {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration (CLI exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An oracle returned a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, std::string diagnostics)
      : Error(what + " [" + diagnostics + "]"), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

/// Malformed input data (e.g. a non-symmetric matrix handed to a symmetric solver).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Caller handed a degenerate input that must be short-circuited upstream (g = 0).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace trish
