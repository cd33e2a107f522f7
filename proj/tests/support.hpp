#pragma once

#include <cmath>
#include <random>

#include "molqi/params.hpp"

namespace molqi::testing {

// Random validated parameter set in the moderate-coupling regime
// g_c^2 / (gamma omega_q) <= 0.3.
inline HybridParams moderate_draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  HybridParams p;
  p.omega_q = 20.0 + 80.0 * u(rng);
  p.v_dd = (0.05 + 0.4 * u(rng)) * p.omega_q;
  p.gamma_1d = 0.02 + 0.28 * u(rng);
  p.gamma_c = (1.0 - p.gamma_1d) * u(rng);
  p.gamma_i = 1.0 - p.gamma_1d - p.gamma_c;
  const double g_max = std::sqrt(0.3 * p.omega_q);
  p.g_c1 = g_max * (2.0 * u(rng) - 1.0);
  p.g_c2 = g_max * (2.0 * u(rng) - 1.0);
  p.g_m1 = 0.5 + u(rng);
  p.g_m2 = 0.5 + u(rng);
  p.eta = u(rng);
  p.resonance = true;
  return validate(p);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace molqi::testing
