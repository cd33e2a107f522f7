#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "molqi/dressed.hpp"
#include "molqi/params.hpp"
#include "molqi/rates.hpp"

namespace molqi {

// Density matrix on the ground manifold {|1>, |4>}.
struct GroundState {
  double rho11 = 1.0;
  double rho44 = 0.0;
  std::complex<double> rho14{0.0, 0.0};

  double trace() const { return rho11 + rho44; }
  // Populations nonnegative and |rho14|^2 <= rho11 rho44, within tol.
  bool is_physical(double tol = 1e-12) const;
};

// Closed-form solution under photon flux alpha2 for a time t. With t2 set
// the coherence picks up an extra Gaussian factor exp(-(t/t2)^2).
GroundState evolve_closed(const GroundState& rho0, const RateSet& rates,
                          double alpha2, double t,
                          std::optional<double> t2 = std::nullopt);

struct NumericOptions {
  double tol = 1e-9;
  std::optional<double> t2;
};

// Integrates the effective master equation built from the numerically
// inverted Hamiltonians. Throws IntegrationFailure.
GroundState evolve_numeric(const GroundState& rho0, const HybridParams& p,
                           const DressedBasis& d, double alpha2, double t,
                           const NumericOptions& opt = {});

// Same, sampled at increasing times starting from zero.
std::vector<GroundState> evolve_numeric_trajectory(
    const GroundState& rho0, const HybridParams& p, const DressedBasis& d,
    double alpha2, const std::vector<double>& times,
    const NumericOptions& opt = {});

}  // namespace molqi
