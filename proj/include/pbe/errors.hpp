#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pbe {

enum class ErrorCode {
  kZeroInput,
  kZeroDivisor,
  kNotAUnit,
  kRingMismatch,
  kOrderExceeded,
  kPrecondition,
  kCoarsen,
  kSingularProblem,
  kBadInitialTerm,
  kSingularJacobian,
  kNotARoot,
  kInconsistentSecularity,
  kNotUnitAmplitude,
  kUnsolvableFit,
  kGaugeMismatch,
  kDomain,
  kTolerance,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this one type; the code
// tells callers (and the CLI exit status) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pbe
