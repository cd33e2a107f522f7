#pragma once

#include <array>

#include "molqi/dressed.hpp"
#include "molqi/matrix4.hpp"
#include "molqi/params.hpp"

namespace molqi {

// Index order of the excited manifold: dressed state with qubit in the upper
// or lower level.
enum ExcitedIndex { kSUpper = 0, kSLower = 1, kAUpper = 2, kALower = 3 };

// Which ground state the photon scatters from: the lower qubit level |1>
// or the upper one |4>.
enum class ScatterPath { kFromLower, kFromUpper };

// Offsets of the probe detuning (eps1) and of half the dressed splitting
// (eps2) from their optimal values.
struct DetuningOffsets {
  double eps1 = 0.0;
  double eps2 = 0.0;
};

DetuningOffsets optimal_offsets(const DressedBasis& d);

ComplexMatrix4 build_hnh(const HybridParams& p, const DressedBasis& d,
                         ScatterPath path, const DetuningOffsets& off);

// Squared magnitudes of the inverse-Hamiltonian elements that control the
// Raman, inverse-Raman and elastic amplitudes.
struct ElementProducts {
  double p23_1 = 0.0;  // lower path, S- -> A+
  double p32_2 = 0.0;  // upper path, A+ -> S-
  double p22_1 = 0.0;  // lower path, S- -> S-
  double p33_2 = 0.0;  // upper path, A+ -> A+
  double pss_2 = 0.0;  // upper path, S+ -> S+
};

ElementProducts element_products_numeric(const HybridParams& p,
                                         const DressedBasis& d,
                                         const DetuningOffsets& off);

// Closed forms as printed for the moderate-coupling limit.
ElementProducts element_products_closed(const HybridParams& p,
                                        const DressedBasis& d,
                                        const DetuningOffsets& off);

// Drive amplitudes (dressed-state overlaps of the waveguide coupling),
// scaled so that a single molecule's waveguide decay rate is gamma_1d.
struct DriveAmplitudes {
  double symmetric = 0.0;
  double antisymmetric = 0.0;
};

DriveAmplitudes drive_amplitudes(const HybridParams& p, const DressedBasis& d);

// Effective ground-manifold operators after eliminating the excited states,
// per unit photon flux. For each decay family k the jump splits by output
// frequency into elastic parts a (on |1>), d (on |4>), a Raman part
// c |4><1| and an inverse-Raman part b |1><4|.
struct EffectiveChannels {
  static constexpr int kFamilies = 3;  // intrinsic 1, intrinsic 2, collective
  static constexpr int kCollective = 2;
  std::array<Complex, kFamilies> elastic_lower{};
  std::array<Complex, kFamilies> elastic_upper{};
  std::array<Complex, kFamilies> raman{};
  std::array<Complex, kFamilies> inverse_raman{};
  // Share of the collective family emitted into the waveguide.
  double waveguide_fraction = 0.0;
  // Light shifts of |1> and |4>.
  double shift_lower = 0.0;
  double shift_upper = 0.0;
};

EffectiveChannels effective_channels(const HybridParams& p,
                                     const DressedBasis& d,
                                     const DetuningOffsets& off);

}  // namespace molqi
