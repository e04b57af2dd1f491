#ifndef SHSIG_ERROR_HPP_
#define SHSIG_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace shsig {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidModulus,
  kKExceedsH,
  kStrictViolation,
  kRankDeficient,
  kNoSolution,
  kSamplerStuck,
  kGenerationFailed,
  kLengthMismatch,
  kNotOrthogonal,
  kInvalidBasis,
  kUnknownHashId,
  kCoefficientOutOfRange,
  kPolicyViolation,
  kNotAForgery,
  kEmptySamples,
  kQueryBudgetExceeded,
  kMalformedAdversaryOutput,
  kFunctionalMismatch,
  kBadMagic,
  kVersionUnsupported,
  kParamsMismatch,
  kTruncated,
  kMalformed,
  kCoefficientOverflow,
  kInvariantViolation,
};

// Stable identifier used in diagnostics, e.g. "ParamsMismatch".
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace shsig

#endif  // SHSIG_ERROR_HPP_
