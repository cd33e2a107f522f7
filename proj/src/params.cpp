#include "molqi/params.hpp"

#include <cmath>
#include <string>

#include "molqi/error.hpp"

namespace molqi {

namespace {

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) {
    throw Error(ErrorCode::kNegativeRate,
                std::string(name) + " = " + std::to_string(value));
  }
}

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kDomainError, std::string(name) + " is not finite");
  }
}

}  // namespace

double resonance_delta0(double v_dd, double omega_q) {
  if (!(omega_q > 0.0)) {
    throw Error(ErrorCode::kDomainError, "omega_q must be positive");
  }
  const double disc = omega_q * omega_q - 4.0 * v_dd * v_dd;
  if (disc < 0.0) {
    throw Error(ErrorCode::kResonanceInfeasible,
                "2V = " + std::to_string(2.0 * std::abs(v_dd)) +
                    " exceeds omega_q = " + std::to_string(omega_q));
  }
  return std::sqrt(disc);
}

double optimal_probe_detuning(const HybridParams& p) {
  const double s = std::hypot(2.0 * p.v_dd, p.delta_0);
  const double g_eff = s > 0.0 ? (p.g_c1 - p.g_c2) * p.v_dd / s : 0.0;
  return -0.5 * p.omega_q + g_eff;
}

HybridParams validate(const HybridParams& p) {
  HybridParams out = p;
  require_finite(p.gamma_1d, "gamma_1d");
  require_finite(p.gamma_c, "gamma_c");
  require_finite(p.gamma_i, "gamma_i");
  require_finite(p.g_c1, "g_c1");
  require_finite(p.g_c2, "g_c2");
  require_finite(p.g_m1, "g_m1");
  require_finite(p.g_m2, "g_m2");
  require_finite(p.v_dd, "v_dd");
  require_finite(p.delta_0, "delta_0");
  require_finite(p.delta, "delta");
  require_nonnegative(p.gamma_1d, "gamma_1d");
  require_nonnegative(p.gamma_c, "gamma_c");
  require_nonnegative(p.gamma_i, "gamma_i");

  const double sum = p.gamma_1d + p.gamma_c + p.gamma_i;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kRateSumMismatch,
                "gamma_1d + gamma_c + gamma_i = " + std::to_string(sum));
  }
  if (!(p.omega_q > 0.0) || !std::isfinite(p.omega_q)) {
    throw Error(ErrorCode::kDomainError, "omega_q must be positive");
  }
  if (!(p.eta >= 0.0 && p.eta <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "eta must lie in [0, 1]");
  }
  if (p.g_m1 == 0.0 && p.g_m2 == 0.0) {
    throw Error(ErrorCode::kDomainError, "g_m1 and g_m2 both zero");
  }
  if (!(p.pulse_duration > 0.0) || !std::isfinite(p.pulse_duration)) {
    throw Error(ErrorCode::kDomainError, "pulse_duration must be positive");
  }
  if (p.t2 && !(*p.t2 > 0.0)) {
    throw Error(ErrorCode::kDomainError, "t2 must be positive");
  }

  if (p.resonance) {
    out.v_dd = std::abs(p.v_dd);
    out.delta_0 = resonance_delta0(out.v_dd, p.omega_q);
    out.delta = optimal_probe_detuning(out);
  }
  return out;
}

HybridParams working_point() { return validate(HybridParams{}); }

}  // namespace molqi
