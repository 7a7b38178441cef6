#pragma once

#include <stdexcept>
#include <string>

namespace hweyl {

enum class ErrorKind {
  CutoffTooLarge,
  OutOfRange,
  UnsupportedMoment,
  NonpositiveValue,
  QuadratureFailure,
  TermBudgetExceeded,
  InvalidArgument,
  Io,
};

/// Single exception type for every recoverable failure; `kind()` lets callers
/// (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hweyl
