#include "molqi/rates.hpp"

#include <cmath>

#include "molqi/error.hpp"
#include "molqi/nonhermitian.hpp"

namespace molqi {

namespace {

constexpr double kAnchorFidelity = 0.90;
constexpr double kAnchorNbar = 1.5;

void require_resonance(const HybridParams& p) {
  const double lhs = 4.0 * p.v_dd * p.v_dd + p.delta_0 * p.delta_0;
  const double wq2 = p.omega_q * p.omega_q;
  if (std::abs(lhs - wq2) > 1e-9 * wq2) {
    throw Error(ErrorCode::kResonanceInfeasible,
                "dressed splitting differs from omega_q");
  }
}

double total_gamma(const HybridParams& p) {
  return p.gamma_1d + p.gamma_c + p.gamma_i;
}

// 4G^2 / (Gs^2 Ga^2 / 4 gamma^2 + 4G^2), the on-resonance Raman bracket.
double raman_bracket(double g_eff, double gamma_s, double gamma_a,
                     double gamma) {
  const double g2 = 4.0 * g_eff * g_eff;
  const double loss = gamma_s * gamma_s * gamma_a * gamma_a / (4.0 * gamma * gamma);
  return g2 / (loss + g2);
}

}  // namespace

RateSet make_rate_set(double p_r, double p_ro, double p_ir, double p_d,
                      double p_rs, double omega_14) {
  const std::pair<double, const char*> probs[] = {
      {p_r, "p_r"}, {p_ro, "p_ro"}, {p_ir, "p_ir"}, {p_d, "p_d"}, {p_rs, "p_rs"}};
  for (const auto& [v, name] : probs) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kDomainError, std::string(name) + " not finite");
    }
    if (v < 0.0) {
      throw Error(ErrorCode::kNegativeRate,
                  std::string(name) + " = " + std::to_string(v));
    }
    if (v > 1.0) {
      throw Error(ErrorCode::kDomainError,
                  std::string(name) + " = " + std::to_string(v) + " exceeds 1");
    }
  }
  if (p_r + p_ro > p_rs * (1.0 + 1e-9) + 1e-15) {
    throw Error(ErrorCode::kDomainError, "p_r + p_ro exceeds p_rs");
  }
  RateSet r;
  r.p_r = p_r;
  r.p_ro = p_ro;
  r.p_ir = p_ir;
  r.p_d = p_d;
  r.p_rs = p_rs;
  r.p_c = p_rs + p_ir + p_d;
  r.omega_14 = omega_14;
  return r;
}

const char* dephasing_model_name(DephasingModel m) {
  switch (m) {
    case DephasingModel::kPrinted: return "printed";
    case DephasingModel::kMatrixElement: return "matrix";
    case DephasingModel::kAnchored: return "anchored";
  }
  return "printed";
}

DephasingModel parse_dephasing_model(const std::string& name) {
  if (name == "printed") return DephasingModel::kPrinted;
  if (name == "matrix") return DephasingModel::kMatrixElement;
  if (name == "anchored") return DephasingModel::kAnchored;
  throw Error(ErrorCode::kConfigParseError,
              "unknown dephasing model '" + name + "'");
}

double raman_probability(const HybridParams& p) {
  require_resonance(p);
  const DressedBasis d = build_dressed(p);
  const double gamma = total_gamma(p);
  const double r1d = p.gamma_1d / gamma;
  const double mix = p.delta_0 / p.omega_q;
  return r1d * r1d * mix * mix *
         raman_bracket(d.g_eff, d.gamma_s, d.gamma_a, gamma);
}

double raman_probability_normalized(double x, double y, double gamma_c_frac) {
  if (!(x >= 0.0 && x < 0.5)) {
    throw Error(ErrorCode::kDomainError, "V/omega_q must lie in [0, 0.5)");
  }
  // On resonance the dressed splitting is omega_q, so G = y x gamma.
  const double g_eff = y * x;
  const double gamma_s = 1.0 + 2.0 * gamma_c_frac * x;
  const double gamma_a = 1.0 - 2.0 * gamma_c_frac * x;
  return (1.0 - 4.0 * x * x) * raman_bracket(g_eff, gamma_s, gamma_a, 1.0);
}

double raman_outside(const HybridParams& p) {
  require_resonance(p);
  const DressedBasis d = build_dressed(p);
  const double gamma = total_gamma(p);
  const double mix = p.delta_0 / p.omega_q;
  const double x = p.v_dd / p.omega_q;
  const double half_bracket =
      0.5 * raman_bracket(d.g_eff, d.gamma_s, d.gamma_a, gamma);
  const double r1d = p.gamma_1d / gamma;
  return r1d * (p.gamma_c / gamma) * mix * mix * half_bracket +
         r1d * (p.gamma_i / gamma) * (1.0 + 2.0 * x) * half_bracket;
}

double raman_total(const HybridParams& p) {
  const DressedBasis d = build_dressed(p);
  const ElementProducts e = element_products_closed(p, d, optimal_offsets(d));
  const DriveAmplitudes v = drive_amplitudes(p, d);
  const double db = d.beta2 - d.beta1;
  const double decay = (p.gamma_1d + p.gamma_c) * db * db +
                       p.gamma_i * d.beta2 * d.beta2 +
                       p.gamma_i * d.beta1 * d.beta1;
  return decay * v.symmetric * v.symmetric * e.p23_1;
}

double inverse_raman(const HybridParams& p) {
  require_resonance(p);
  const DressedBasis d = build_dressed(p);
  const double gamma = total_gamma(p);
  const double r1d = p.gamma_1d / gamma;
  const double mix = p.delta_0 / p.omega_q;
  const double x = p.v_dd / p.omega_q;
  const double prefactor = r1d * r1d * mix * mix +
                           r1d * (p.gamma_c / gamma) * mix * mix +
                           r1d * (p.gamma_i / gamma) * (1.0 - 2.0 * x);
  // G^4 (1 + Gas G1 / 4G^2 - Gs / 2G)^2 expanded so that G = 0 is regular.
  const double g = d.g_eff;
  const double inner = g * g + 0.25 * d.gamma_as * d.g1_eff - 0.5 * d.gamma_s * g;
  const double scale = 1.0 / (gamma * p.omega_q);
  return prefactor * inner * inner * scale * scale /
         ((d.gamma_s * d.gamma_s + 4.0 * g * g) / (gamma * gamma));
}

double inverse_raman_ratio(const HybridParams& p) {
  const double total = raman_total(p);
  return total > 0.0 ? inverse_raman(p) / total : 0.0;
}

double dephasing_probability(const HybridParams& p) {
  require_resonance(p);
  const DressedBasis d = build_dressed(p);
  const double gamma = total_gamma(p);
  const double x = p.v_dd / p.omega_q;
  const double up = 1.0 + 2.0 * x;
  const double g = d.g_eff;
  const double gs = d.gamma_s;
  const double ga = d.gamma_a;
  const double prefactor =
      (p.gamma_1d / gamma) * ((p.gamma_i / gamma) * up +
                              ((p.gamma_1d + p.gamma_c) / gamma) * up * up);
  const double num = 64.0 * std::pow(g, 4) - 16.0 * ga * g * g * (4.0 * g - ga) +
                     4.0 * g * g - 8.0 * gs * gs * ga * g;
  const double den = (4.0 * g * g + gs * gs) *
                     (gs * gs * gs * gs / (4.0 * gamma * gamma) + g * g);
  return prefactor * num / den;
}

double dephasing_probability_matrix(const HybridParams& p) {
  const DressedBasis d = build_dressed(p);
  const DetuningOffsets off = optimal_offsets(d);
  const ComplexMatrix4 inv1 =
      invert4(build_hnh(p, d, ScatterPath::kFromLower, off));
  const ComplexMatrix4 inv2 =
      invert4(build_hnh(p, d, ScatterPath::kFromUpper, off));
  const DriveAmplitudes v = drive_amplitudes(p, d);
  const double sb = d.beta2p + d.beta1p;
  const double decay = (p.gamma_1d + p.gamma_c) * sb * sb +
                       p.gamma_i * d.beta2p * d.beta2p +
                       p.gamma_i * d.beta1p * d.beta1p;
  return decay * v.symmetric * v.symmetric *
         std::norm(inv1(kSLower, kSLower) - inv2(kSUpper, kSUpper));
}

double dephasing_probability_anchored(const HybridParams& p) {
  const double a = raman_probability(p) + raman_outside(p);
  return 4.0 * ((1.0 - kAnchorFidelity) / (0.5 * kAnchorNbar) - a);
}

RateSet closed_rate_set(const HybridParams& p, DephasingModel model) {
  double p_d = 0.0;
  switch (model) {
    case DephasingModel::kPrinted: p_d = dephasing_probability(p); break;
    case DephasingModel::kMatrixElement:
      p_d = dephasing_probability_matrix(p);
      break;
    case DephasingModel::kAnchored: p_d = dephasing_probability_anchored(p); break;
  }
  // Light-shifted coherence frequency in the frame rotating at omega_q.
  const DressedBasis d = build_dressed(p);
  const DetuningOffsets off = optimal_offsets(d);
  const ComplexMatrix4 inv1 =
      invert4(build_hnh(p, d, ScatterPath::kFromLower, off));
  const ComplexMatrix4 inv2 =
      invert4(build_hnh(p, d, ScatterPath::kFromUpper, off));
  const DriveAmplitudes v = drive_amplitudes(p, d);
  const double norm = std::sqrt(0.5 * (p.g_m1 * p.g_m1 + p.g_m2 * p.g_m2));
  const double va = std::sqrt(p.gamma_1d) / norm *
                    (p.g_m1 * d.beta2p - p.g_m2 * d.beta1p);
  const double omega_14 =
      v.symmetric * v.symmetric * 2.0 * inv1(kSLower, kSLower).real() +
      va * va * 2.0 * inv2(kAUpper, kAUpper).real();

  return make_rate_set(raman_probability(p), raman_outside(p), inverse_raman(p),
                       p_d, raman_total(p), omega_14);
}

RateSet numeric_rate_set(const HybridParams& p, const DressedBasis& d) {
  const EffectiveChannels ch = effective_channels(p, d, optimal_offsets(d));
  double p_rs = 0.0;
  double p_ir = 0.0;
  double p_d = 0.0;
  double phase = 0.0;
  for (int k = 0; k < EffectiveChannels::kFamilies; ++k) {
    p_rs += std::norm(ch.raman[k]);
    p_ir += std::norm(ch.inverse_raman[k]);
    p_d += std::norm(ch.elastic_lower[k] - ch.elastic_upper[k]);
    phase += (ch.elastic_lower[k] * std::conj(ch.elastic_upper[k])).imag();
  }
  const double p_r =
      ch.waveguide_fraction * std::norm(ch.raman[EffectiveChannels::kCollective]);
  const double omega_14 = ch.shift_upper - ch.shift_lower + phase;
  return make_rate_set(p_r, p_rs - p_r, p_ir, p_d, p_rs, omega_14);
}

ScatterCoeff single_molecule_zeta(const HybridParams& p) {
  return {single_molecule_zeta(p, QubitState::kDown, p.delta),
          single_molecule_zeta(p, QubitState::kUp, p.delta)};
}

std::complex<double> single_molecule_zeta(const HybridParams& p,
                                          QubitState state, double detuning) {
  const double gamma = total_gamma(p);
  const double shift = state == QubitState::kDown ? -0.5 * p.g_c1 : 0.5 * p.g_c1;
  return 0.5 * p.gamma_1d /
         std::complex<double>(detuning + shift, -0.5 * gamma);
}

ReadoutContrast readout_contrast(const HybridParams& p, double n_photons) {
  if (!(n_photons >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "photon number must be nonnegative");
  }
  const double probe = 0.5 * p.g_c1;
  const double r_down =
      std::norm(single_molecule_zeta(p, QubitState::kDown, probe));
  const double r_up = std::norm(single_molecule_zeta(p, QubitState::kUp, probe));
  return {-std::expm1(n_photons * std::log1p(-r_up)),
          -std::expm1(n_photons * std::log1p(-r_down))};
}

double photon_budget(const HybridParams& p) {
  const double r =
      std::norm(single_molecule_zeta(p, QubitState::kDown, 0.5 * p.g_c1));
  return 1.0 / r;
}

}  // namespace molqi
