#include "adscurve/error.hpp"

#include <cstdio>

namespace adscurve {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::StencilOutOfDomain: return "StencilOutOfDomain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GridNotUniform: return "GridNotUniform";
    case ErrorCode::MembershipViolated: return "MembershipViolated";
    case ErrorCode::FramedConditionViolated: return "FramedConditionViolated";
    case ErrorCode::NotOnAdS: return "NotOnAdS";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::MixedCausality: return "MixedCausality";
    case ErrorCode::InitNotOrthonormal: return "InitNotOrthonormal";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::CasePreconditionViolated: return "CasePreconditionViolated";
    case ErrorCode::SphereMismatch: return "SphereMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AdaptedFrameDegenerate: return "AdaptedFrameDegenerate";
    case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::DiscriminantVanishes: return "DiscriminantVanishes";
    case ErrorCode::GuardViolated: return "GuardViolated";
    case ErrorCode::OmegaSingular: return "OmegaSingular";
    case ErrorCode::DegenerateDensity: return "DegenerateDensity";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::AdaptedFrameDegenerate:
    case ErrorCode::ToleranceExceeded:
    case ErrorCode::DiscriminantVanishes:
    case ErrorCode::GuardViolated:
    case ErrorCode::OmegaSingular:
    case ErrorCode::DegenerateDensity:
      return ErrorCategory::Degeneracy;
    case ErrorCode::IoError:
      return ErrorCategory::Io;
    default:
      return ErrorCategory::Validation;
  }
}

namespace {

std::string compose(ErrorCode code, const std::string& detail,
                    std::optional<double> where) {
  std::string msg = to_string(code);
  if (where) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " at s=%.17g", *where);
    msg += buf;
  }
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail,
             std::optional<double> where)
    : std::runtime_error(compose(code, detail, where)),
      code_(code),
      where_(where) {}

}  // namespace adscurve
