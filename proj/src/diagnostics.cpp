#include "shsig/diagnostics.hpp"

#include <iostream>

#include "shsig/error.hpp"

namespace shsig {

namespace {
WarningSink& sink() {
  static WarningSink s;
  return s;
}
}  // namespace

void set_warning_sink(WarningSink s) { sink() = std::move(s); }

void warn(std::string_view message) {
  if (sink()) {
    sink()(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidModulus: return "InvalidModulus";
    case ErrorCode::kKExceedsH: return "KExceedsH";
    case ErrorCode::kStrictViolation: return "StrictViolation";
    case ErrorCode::kRankDeficient: return "RankDeficient";
    case ErrorCode::kNoSolution: return "NoSolution";
    case ErrorCode::kSamplerStuck: return "SamplerStuck";
    case ErrorCode::kGenerationFailed: return "GenerationFailed";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNotOrthogonal: return "NotOrthogonal";
    case ErrorCode::kInvalidBasis: return "InvalidBasis";
    case ErrorCode::kUnknownHashId: return "UnknownHashId";
    case ErrorCode::kCoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorCode::kPolicyViolation: return "PolicyViolation";
    case ErrorCode::kNotAForgery: return "NotAForgery";
    case ErrorCode::kEmptySamples: return "EmptySamples";
    case ErrorCode::kQueryBudgetExceeded: return "QueryBudgetExceeded";
    case ErrorCode::kMalformedAdversaryOutput: return "MalformedAdversaryOutput";
    case ErrorCode::kFunctionalMismatch: return "FunctionalMismatch";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kVersionUnsupported: return "VersionUnsupported";
    case ErrorCode::kParamsMismatch: return "ParamsMismatch";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kMalformed: return "Malformed";
    case ErrorCode::kCoefficientOverflow: return "CoefficientOverflow";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace shsig
