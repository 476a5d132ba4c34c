#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vnerg {

enum class ErrorKind {
  NonFinite,
  NotPSD,
  SingularMatrix,
  DimensionMismatch,
  NotFaithful,
  NotInvariant,
  NotInPHalf,
  NotContraction,
  SingularResolvent,
  UnsupportedGroup,
  GroupRelationViolated,
  SetSizeExceeded,
  InvalidArgument,
  ParseError,
  ValidationError,
  IoError,
};

// Stable machine-readable name, used verbatim in CLI reason lines.
std::string_view to_string(ErrorKind kind) noexcept;

// True for failures of a mathematical hypothesis (as opposed to bad input or I/O).
bool is_hypothesis_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vnerg
