#include "molqi/dressed.hpp"

#include <cmath>

#include "molqi/error.hpp"

namespace molqi {

DressedBasis build_dressed(const HybridParams& p) {
  const double s = std::hypot(2.0 * p.v_dd, p.delta_0);
  if (!(s > 0.0)) {
    throw Error(ErrorCode::kDegenerateSplitting, "V and delta_0 both zero");
  }
  const double mix = p.delta_0 / s;
  const double x = p.v_dd / s;
  const double gamma = p.gamma_1d + p.gamma_c + p.gamma_i;

  DressedBasis d;
  d.beta1 = std::sqrt(0.5 * (1.0 + mix));
  d.beta2 = std::sqrt(0.5 * (1.0 - mix));
  d.beta1p = d.beta2;
  d.beta2p = d.beta1;
  d.splitting = s;
  d.g_eff = (p.g_c1 - p.g_c2) * x;
  d.g1_eff = 0.5 * (p.g_c1 + p.g_c2 + mix * (p.g_c1 - p.g_c2));
  d.g2_eff = 0.5 * (p.g_c1 + p.g_c2 - mix * (p.g_c1 - p.g_c2));
  d.gamma_s = gamma + 2.0 * p.gamma_c * x;
  d.gamma_a = gamma - 2.0 * p.gamma_c * x;
  d.gamma_as = p.gamma_c * mix;
  return d;
}

}  // namespace molqi
