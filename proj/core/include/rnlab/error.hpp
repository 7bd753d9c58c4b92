#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rnlab {

enum class ErrorCode {
  InvalidArgument,
  SquareD,
  ParityViolation,
  MixedD,
  DivisionByZero,
  IdentityViolation,
  ContentViolation,
  NotMonomial,
  BOutOfRange,
  CompositeModulus,
  NoRoot,
  NoSplit,
  NotMonotone,
  NeitherBranch,
  AmbiguousBranch,
  PreconditionFail,
  BothBranchesVanish,
  InvalidSigma,
  CorruptBlob,
  Undecidable,
};

/// Coarse classes used to pick a process exit code.
enum class ErrorClass {
  InvalidInput,
  Undecidable,
  InternalInvariant,
};

std::string_view to_string(ErrorCode code) noexcept;
ErrorClass classify(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rnlab
