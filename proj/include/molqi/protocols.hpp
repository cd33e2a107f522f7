#pragma once

#include <cstdint>
#include <optional>

#include "molqi/params.hpp"
#include "molqi/rates.hpp"

namespace molqi {

// What the protocols need from a hybrid: the retained rates plus detector
// efficiency, pulse length and qubit coherence time.
struct ProtocolInputs {
  double p_r = 0.0;
  double p_ro = 0.0;
  double p_d = 0.0;
  double eta = 0.5;
  double pulse_duration = 1.0;
  std::optional<double> t2;

  // Raman loss of the initial state, p_r + p_ro.
  double depletion() const { return p_r + p_ro; }
};

// Inverse Raman scattering is neglected, as in the protocol analysis.
ProtocolInputs protocol_inputs(const HybridParams& p, const RateSet& rates);

struct ProtocolResult {
  double fidelity = 0.0;
  double success_prob = 0.0;
  double s_parameter = 0.0;
  double n_bar = 0.0;
  // First-order expansion of the Bell fidelity.
  double fidelity_linear = 0.0;
  double fidelity_stderr = 0.0;
  double success_stderr = 0.0;
  double s_stderr = 0.0;
  // Monte Carlo only: mean infidelity from qubit dephasing alone, evaluated
  // on the sampled click times, and its standard error.
  double t2_reduction = 0.0;
  double t2_reduction_stderr = 0.0;
  std::uint64_t clicks = 0;
  std::uint64_t trials = 0;
};

// Balanced beam splitter for the single-hybrid scheme.
double balanced_chi2(double p_r);

ProtocolResult chsh_single_photon(const ProtocolInputs& in);
ProtocolResult chsh_coherent(const ProtocolInputs& in, double n_bar);
ProtocolResult bell_single_photon(const ProtocolInputs& in);
ProtocolResult bell_coherent(const ProtocolInputs& in, double n_bar,
                             bool with_t2 = false);

enum class Protocol { kChsh, kBell };

struct MonteCarloOptions {
  bool with_t2 = false;
  // 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
};

// Samples first-click times, evolves the conditional state to the end of
// the pulse and averages the CHSH correlators or the Bell fidelity.
// Results depend only on the seed, not on the thread count.
ProtocolResult monte_carlo_protocol(Protocol which, const ProtocolInputs& in,
                                    double n_bar, std::uint64_t n_trials,
                                    std::uint64_t seed,
                                    const MonteCarloOptions& opt = {});

}  // namespace molqi
