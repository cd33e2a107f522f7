#include "molqi/nonhermitian.hpp"

#include <cmath>
#include <complex>

namespace molqi {

namespace {

constexpr Complex kI(0.0, 1.0);

double abs2(Complex z) { return std::norm(z); }

// Jump operator coefficients of one decay family: amplitude for an excited
// dressed state to decay to the ground state with the same qubit level.
struct DecayFamily {
  double symmetric;
  double antisymmetric;
};

std::array<DecayFamily, EffectiveChannels::kFamilies> decay_families(
    const HybridParams& p, const DressedBasis& d) {
  const double si = std::sqrt(p.gamma_i);
  const double sc = std::sqrt(p.gamma_1d + p.gamma_c);
  return {{
      {si * d.beta2p, si * d.beta2},
      {si * d.beta1p, -si * d.beta1},
      {sc * (d.beta2p + d.beta1p), sc * (d.beta2 - d.beta1)},
  }};
}

}  // namespace

DetuningOffsets optimal_offsets(const DressedBasis& d) {
  return {d.g_eff, 0.0};
}

ComplexMatrix4 build_hnh(const HybridParams& p, const DressedBasis& d,
                         ScatterPath path, const DetuningOffsets& off) {
  const double vd = 0.5 * p.omega_q + off.eps2;
  const double det = -0.5 * p.omega_q + off.eps1;
  const double wq = p.omega_q;
  const bool lower = path == ScatterPath::kFromLower;

  ComplexMatrix4 h;
  h(0, 0) = Complex(vd + det + (lower ? wq : 0.0), -0.5 * d.gamma_s);
  h(1, 1) = Complex(vd + det - (lower ? 0.0 : wq), -0.5 * d.gamma_s);
  h(2, 2) = Complex(-vd + det + (lower ? wq : 0.0), -0.5 * d.gamma_a);
  h(3, 3) = Complex(-vd + det - (lower ? 0.0 : wq), -0.5 * d.gamma_a);

  h(0, 1) = h(1, 0) = 0.5 * d.g1_eff;
  h(2, 3) = h(3, 2) = 0.5 * d.g2_eff;
  h(0, 2) = h(2, 0) = -0.5 * kI * d.gamma_as;
  h(1, 3) = h(3, 1) = -0.5 * kI * d.gamma_as;
  h(0, 3) = h(3, 0) = d.g_eff;
  h(1, 2) = h(2, 1) = d.g_eff;
  return h;
}

ElementProducts element_products_numeric(const HybridParams& p,
                                         const DressedBasis& d,
                                         const DetuningOffsets& off) {
  const ComplexMatrix4 inv1 =
      invert4(build_hnh(p, d, ScatterPath::kFromLower, off));
  const ComplexMatrix4 inv2 =
      invert4(build_hnh(p, d, ScatterPath::kFromUpper, off));
  ElementProducts e;
  e.p23_1 = abs2(inv1(kAUpper, kSLower));
  e.p32_2 = abs2(inv2(kSLower, kAUpper));
  e.p22_1 = abs2(inv1(kSLower, kSLower));
  e.p33_2 = abs2(inv2(kAUpper, kAUpper));
  e.pss_2 = abs2(inv2(kSUpper, kSUpper));
  return e;
}

ElementProducts element_products_closed(const HybridParams& p,
                                        const DressedBasis& d,
                                        const DetuningOffsets& off) {
  const double g = d.g_eff;
  const double gs = d.gamma_s;
  const double ga = d.gamma_a;
  const double e1 = off.eps1;
  const double e2 = off.eps2;
  const double esum = e1 + e2;
  const double wq = p.omega_q;

  const double den_a = 4.0 * g * g + gs * ga + 4.0 * (e2 * e2 - e1 * e1);
  const double den_b = gs * (e1 - e2) + ga * (e1 + e2);
  const double den = den_a * den_a + 4.0 * den_b * den_b;
  const double lorentz = gs * gs + 4.0 * esum * esum;

  ElementProducts e;
  e.p23_1 = 16.0 * g * g / den;

  const double k = 8.0 * gs * g - 4.0 * d.gamma_as * d.g1_eff - 16.0 * g * esum;
  const double kb1 = 0.25 * esum * k;
  const double kb2 = 0.125 * gs * k;
  e.p32_2 = (kb1 * kb1 + kb2 * kb2) / (std::pow(wq, 4) * lorentz * lorentz);

  const double c = ga + 2.0 * (e2 - e1);
  e.p22_1 = 16.0 * c * c / den;

  const double t1 = 2.0 * esum * (gs - 2.0 * esum);
  const double t2 = gs * (gs - 2.0 * esum);
  e.p33_2 = (t1 * t1 + t2 * t2) / (wq * wq * lorentz);

  e.pss_2 = 4.0 / lorentz;
  return e;
}

DriveAmplitudes drive_amplitudes(const HybridParams& p, const DressedBasis& d) {
  const double norm = std::sqrt(0.5 * (p.g_m1 * p.g_m1 + p.g_m2 * p.g_m2));
  const double scale = std::sqrt(p.gamma_1d) / norm;
  return {scale * (p.g_m1 * d.beta2p + p.g_m2 * d.beta1p),
          scale * (p.g_m1 * d.beta2 - p.g_m2 * d.beta1)};
}

EffectiveChannels effective_channels(const HybridParams& p,
                                     const DressedBasis& d,
                                     const DetuningOffsets& off) {
  const ComplexMatrix4 inv1 =
      invert4(build_hnh(p, d, ScatterPath::kFromLower, off));
  const ComplexMatrix4 inv2 =
      invert4(build_hnh(p, d, ScatterPath::kFromUpper, off));
  const DriveAmplitudes v = drive_amplitudes(p, d);

  // |1> is driven into S- and A-; |4> into S+ and A+.
  std::array<Complex, 4> drive_lower{};
  drive_lower[kSLower] = v.symmetric;
  drive_lower[kALower] = v.antisymmetric;
  std::array<Complex, 4> drive_upper{};
  drive_upper[kSUpper] = v.symmetric;
  drive_upper[kAUpper] = v.antisymmetric;

  const auto u1 = inv1 * drive_lower;
  const auto u4 = inv2 * drive_upper;

  EffectiveChannels ch;
  const auto families = decay_families(p, d);
  for (int k = 0; k < EffectiveChannels::kFamilies; ++k) {
    const double ls = families[k].symmetric;
    const double la = families[k].antisymmetric;
    // Lower-qubit excited states decay to |1>, upper ones to |4>.
    ch.elastic_lower[k] = ls * u1[kSLower] + la * u1[kALower];
    ch.raman[k] = ls * u1[kSUpper] + la * u1[kAUpper];
    ch.inverse_raman[k] = ls * u4[kSLower] + la * u4[kALower];
    ch.elastic_upper[k] = ls * u4[kSUpper] + la * u4[kAUpper];
  }
  const double coll = p.gamma_1d + p.gamma_c;
  ch.waveguide_fraction = coll > 0.0 ? p.gamma_1d / coll : 0.0;

  Complex s1(0.0, 0.0);
  Complex s4(0.0, 0.0);
  for (int i = 0; i < 4; ++i) {
    s1 += std::conj(drive_lower[i]) * u1[i];
    s4 += std::conj(drive_upper[i]) * u4[i];
  }
  ch.shift_lower = -s1.real();
  ch.shift_upper = -s4.real();
  return ch;
}

}  // namespace molqi
