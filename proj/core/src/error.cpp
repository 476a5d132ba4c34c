#include "vnerg/error.hpp"

namespace vnerg {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotFaithful: return "NotFaithful";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotInPHalf: return "NotInP_half";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::SingularResolvent: return "SingularResolvent";
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::GroupRelationViolated: return "GroupRelationViolated";
    case ErrorKind::SetSizeExceeded: return "SetSizeExceeded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_hypothesis_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotFaithful:
    case ErrorKind::NotInvariant:
    case ErrorKind::NotInPHalf:
    case ErrorKind::NotContraction:
    case ErrorKind::GroupRelationViolated:
      return true;
    default:
      return false;
  }
}

}  // namespace vnerg
