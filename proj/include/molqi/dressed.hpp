#pragma once

#include "molqi/params.hpp"

namespace molqi {

// Symmetric/antisymmetric single-excitation states of the dipole-coupled
// molecule pair, |S> = beta1|eg> + beta2|ge>, |A> = beta1p|eg> - beta2p|ge>.
struct DressedBasis {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta1p = 0.0;
  double beta2p = 0.0;
  double splitting = 0.0;  // 2V_dressed = sqrt(4V^2 + delta_0^2)
  double g_eff = 0.0;      // S- <-> A+ coupling
  double g1_eff = 0.0;
  double g2_eff = 0.0;
  double gamma_s = 0.0;
  double gamma_a = 0.0;
  double gamma_as = 0.0;

  double half_splitting() const { return 0.5 * splitting; }
};

DressedBasis build_dressed(const HybridParams& p);

}  // namespace molqi
