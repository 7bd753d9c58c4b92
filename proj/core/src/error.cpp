#include "rnlab/error.hpp"

namespace rnlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SquareD: return "SquareD";
    case ErrorCode::ParityViolation: return "ParityViolation";
    case ErrorCode::MixedD: return "MixedD";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IdentityViolation: return "IdentityViolation";
    case ErrorCode::ContentViolation: return "ContentViolation";
    case ErrorCode::NotMonomial: return "NotMonomial";
    case ErrorCode::BOutOfRange: return "BOutOfRange";
    case ErrorCode::CompositeModulus: return "CompositeModulus";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NoSplit: return "NoSplit";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NeitherBranch: return "NeitherBranch";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::PreconditionFail: return "PreconditionFail";
    case ErrorCode::BothBranchesVanish: return "BothBranchesVanish";
    case ErrorCode::InvalidSigma: return "InvalidSigma";
    case ErrorCode::CorruptBlob: return "CorruptBlob";
    case ErrorCode::Undecidable: return "Undecidable";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IdentityViolation:
    case ErrorCode::ContentViolation:
    case ErrorCode::NotMonomial:
    case ErrorCode::NeitherBranch:
    case ErrorCode::AmbiguousBranch:
    case ErrorCode::BothBranchesVanish:
    case ErrorCode::NotMonotone:
      return ErrorClass::InternalInvariant;
    case ErrorCode::Undecidable:
      return ErrorClass::Undecidable;
    default:
      return ErrorClass::InvalidInput;
  }
}

}  // namespace rnlab
