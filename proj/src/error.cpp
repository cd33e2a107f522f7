#include "molqi/error.hpp"

namespace molqi {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeRate: return "NegativeRate";
    case ErrorCode::kRateSumMismatch: return "RateSumMismatch";
    case ErrorCode::kResonanceInfeasible: return "ResonanceInfeasible";
    case ErrorCode::kDegenerateSplitting: return "DegenerateSplitting";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kIntegrationFailure: return "IntegrationFailure";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kConfigParseError: return "ConfigParseError";
    case ErrorCode::kScenarioUnknown: return "ScenarioUnknown";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigParseError:
    case ErrorCode::kScenarioUnknown:
    case ErrorCode::kNegativeRate:
    case ErrorCode::kRateSumMismatch:
    case ErrorCode::kResonanceInfeasible:
    case ErrorCode::kDomainError:
    case ErrorCode::kGridTooCoarse:
      return 2;
    default:
      return 3;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace molqi
