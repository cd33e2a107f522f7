#pragma once

#include <optional>

namespace molqi {

// Physical parameters of one molecule-pair + qubit hybrid, in units of the
// total molecular linewidth.
struct HybridParams {
  double gamma_1d = 0.1;
  double gamma_c = 0.45;
  double gamma_i = 0.45;
  double g_c1 = 2.0;
  double g_c2 = -2.0;
  double g_m1 = 1.0;
  double g_m2 = 1.0;
  double v_dd = 10.0;
  double delta_0 = 0.0;
  double omega_q = 50.0;
  double delta = 0.0;
  double eta = 0.5;
  std::optional<double> t2;
  double pulse_duration = 6.283185307179586;  // 50 ns
  // When set, validate() tunes delta_0 so the dressed splitting equals
  // omega_q and puts the probe at the optimal detuning.
  bool resonance = true;
};

// Validated reference working point: V/omega_q = 0.2, (g_c1 - g_c2) = 4.
HybridParams working_point();

HybridParams validate(const HybridParams& p);

// delta_0 = sqrt(omega_q^2 - 4 V^2).
double resonance_delta0(double v_dd, double omega_q);

// Probe detuning Delta = -omega_q/2 + G_eff that maximizes Raman transfer.
double optimal_probe_detuning(const HybridParams& p);

}  // namespace molqi
