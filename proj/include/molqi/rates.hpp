#pragma once

#include <complex>
#include <string>
#include <utility>

#include "molqi/dressed.hpp"
#include "molqi/params.hpp"

namespace molqi {

// Per-photon probabilities feeding the protocols. p_rs is the total Raman
// rate (waveguide plus loss), p_c the coherence decay rate.
struct RateSet {
  double p_r = 0.0;
  double p_ro = 0.0;
  double p_ir = 0.0;
  double p_d = 0.0;
  double p_rs = 0.0;
  double p_c = 0.0;
  double omega_14 = 0.0;
};

// Checks the RateSet invariants and fills p_c. Throws NegativeRate or
// DomainError.
RateSet make_rate_set(double p_r, double p_ro, double p_ir, double p_d,
                      double p_rs, double omega_14);

// Source of the light-induced dephasing probability.
enum class DephasingModel {
  kPrinted,        // printed closed form
  kMatrixElement,  // elastic amplitude difference from the inverted matrices
  kAnchored,       // value that puts the Bell fidelity at 0.90 for nbar = 1.5
};

const char* dephasing_model_name(DephasingModel m);
DephasingModel parse_dephasing_model(const std::string& name);

// Waveguide Raman probability, requires the resonance condition.
double raman_probability(const HybridParams& p);

// Raman probability divided by (gamma_1d/gamma)^2 as a function of
// x = V/omega_q and y = (g_c1 - g_c2)/gamma on resonance.
double raman_probability_normalized(double x, double y, double gamma_c_frac);

// Raman scattering into non-waveguide modes, as printed.
double raman_outside(const HybridParams& p);

// Total Raman rate built from the closed-form S- -> A+ element product.
double raman_total(const HybridParams& p);

double inverse_raman(const HybridParams& p);
double inverse_raman_ratio(const HybridParams& p);

double dephasing_probability(const HybridParams& p);
double dephasing_probability_matrix(const HybridParams& p);
double dephasing_probability_anchored(const HybridParams& p);

// Closed-form rate set used by the protocols.
RateSet closed_rate_set(const HybridParams& p,
                        DephasingModel model = DephasingModel::kPrinted);

// Rate set read off the numerically eliminated effective operators.
RateSet numeric_rate_set(const HybridParams& p, const DressedBasis& d);

enum class QubitState { kDown, kUp };

struct ScatterCoeff {
  std::complex<double> zeta_down;
  std::complex<double> zeta_up;
};

// Single-molecule reflection amplitudes at the configured probe detuning.
ScatterCoeff single_molecule_zeta(const HybridParams& p);
std::complex<double> single_molecule_zeta(const HybridParams& p,
                                          QubitState state, double detuning);

struct ReadoutContrast {
  double p_click_up = 0.0;
  double p_click_down = 0.0;
};

// Reflection click probabilities after n photons with the probe resonant
// with the qubit-down line.
ReadoutContrast readout_contrast(const HybridParams& p, double n_photons);

// Photons needed for one expected reflection on resonance.
double photon_budget(const HybridParams& p);

}  // namespace molqi
