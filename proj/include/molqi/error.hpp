#pragma once

#include <stdexcept>
#include <string>

namespace molqi {

enum class ErrorCode {
  kNegativeRate,
  kRateSumMismatch,
  kResonanceInfeasible,
  kDegenerateSplitting,
  kSingularMatrix,
  kDomainError,
  kIntegrationFailure,
  kNonConvergence,
  kGridTooCoarse,
  kConfigParseError,
  kScenarioUnknown,
};

const char* error_code_name(ErrorCode code);

// Process exit status for an error: 2 for configuration problems, 3 for
// numerical failures.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace molqi
