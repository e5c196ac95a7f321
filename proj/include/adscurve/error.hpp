#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace adscurve {

/// Coarse failure class. The CLI turns these into exit codes 2, 3 and 4.
enum class ErrorCategory { Validation, Degeneracy, Io };

enum class ErrorCode {
  NonFinite,
  DomainError,
  StencilOutOfDomain,
  ParseError,
  GridNotUniform,
  MembershipViolated,
  FramedConditionViolated,
  NotOnAdS,
  NotRegular,
  MixedCausality,
  InitNotOrthonormal,
  GridMismatch,
  BranchMismatch,
  CasePreconditionViolated,
  SphereMismatch,
  KindMismatch,
  InvalidArgument,
  AdaptedFrameDegenerate,
  ToleranceExceeded,
  DiscriminantVanishes,
  GuardViolated,
  OmegaSingular,
  DegenerateDensity,
  IoError,
};

const char* to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

/// The single exception type thrown by the library.
/// `where` carries the curve parameter (or the input line for parse errors).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        std::optional<double> where = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }
  std::optional<double> where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<double> where_;
};

}  // namespace adscurve
