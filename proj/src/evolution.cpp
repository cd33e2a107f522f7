#include "molqi/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#include <boost/numeric/odeint.hpp>

#include "molqi/error.hpp"
#include "molqi/nonhermitian.hpp"

namespace molqi {

namespace {

using Cplx = std::complex<double>;
using Mat2 = std::array<std::array<Cplx, 2>, 2>;
// Real and imaginary parts of rho in row-major order.
using StateVec = std::array<double, 8>;

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

Mat2 dagger(const Mat2& a) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = std::conj(a[j][i]);
  return c;
}

Mat2 unpack(const StateVec& x) {
  Mat2 m{};
  for (int i = 0; i < 4; ++i) m[i / 2][i % 2] = Cplx(x[2 * i], x[2 * i + 1]);
  return m;
}

StateVec pack(const Mat2& m) {
  StateVec x{};
  for (int i = 0; i < 4; ++i) {
    x[2 * i] = m[i / 2][i % 2].real();
    x[2 * i + 1] = m[i / 2][i % 2].imag();
  }
  return x;
}

GroundState to_ground(const StateVec& x) {
  const Mat2 m = unpack(x);
  return {m[0][0].real(), m[1][1].real(), m[0][1]};
}

StateVec from_ground(const GroundState& g) {
  Mat2 m{};
  m[0][0] = g.rho11;
  m[1][1] = g.rho44;
  m[0][1] = g.rho14;
  m[1][0] = std::conj(g.rho14);
  return pack(m);
}

// Lindblad generator on the ground manifold with jump operators scaled by
// the photon flux and an optional time-dependent qubit dephasing.
class EffectiveMasterEquation {
 public:
  EffectiveMasterEquation(const EffectiveChannels& ch, double alpha2,
                          std::optional<double> t2)
      : t2_(t2) {
    hamiltonian_[0][0] = alpha2 * ch.shift_lower;
    hamiltonian_[1][1] = alpha2 * ch.shift_upper;
    const double amp = std::sqrt(alpha2);
    for (int k = 0; k < EffectiveChannels::kFamilies; ++k) {
      Mat2 elastic{};
      elastic[0][0] = amp * ch.elastic_lower[k];
      elastic[1][1] = amp * ch.elastic_upper[k];
      Mat2 raman{};
      raman[1][0] = amp * ch.raman[k];
      Mat2 inverse{};
      inverse[0][1] = amp * ch.inverse_raman[k];
      jumps_.push_back(elastic);
      jumps_.push_back(raman);
      jumps_.push_back(inverse);
    }
  }

  void operator()(const StateVec& x, StateVec& dxdt, double t) const {
    const Mat2 rho = unpack(x);
    const Mat2 hr = mul(hamiltonian_, rho);
    const Mat2 rh = mul(rho, hamiltonian_);
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = Cplx(0.0, -1.0) * (hr[i][j] - rh[i][j]);
    for (const Mat2& l : jumps_) add_dissipator(l, rho, out);
    if (t2_) {
      // L = sqrt(t)/T2 sigma_z gives coherence decay exp(-(t/T2)^2).
      const double kappa = t / (*t2_ * *t2_);
      out[0][1] -= 2.0 * kappa * rho[0][1];
      out[1][0] -= 2.0 * kappa * rho[1][0];
    }
    dxdt = pack(out);
  }

 private:
  static void add_dissipator(const Mat2& l, const Mat2& rho, Mat2& out) {
    const Mat2 ld = dagger(l);
    const Mat2 ldl = mul(ld, l);
    const Mat2 jump = mul(mul(l, rho), ld);
    const Mat2 left = mul(ldl, rho);
    const Mat2 right = mul(rho, ldl);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        out[i][j] += jump[i][j] - 0.5 * (left[i][j] + right[i][j]);
  }

  Mat2 hamiltonian_{};
  std::vector<Mat2> jumps_;
  std::optional<double> t2_;
};

}  // namespace

bool GroundState::is_physical(double tol) const {
  return rho11 >= -tol && rho44 >= -tol &&
         std::norm(rho14) <= rho11 * rho44 + tol;
}

GroundState evolve_closed(const GroundState& rho0, const RateSet& rates,
                          double alpha2, double t, std::optional<double> t2) {
  GroundState out = rho0;
  const double total = rates.p_rs + rates.p_ir;
  if (total > 0.0) {
    const double decay = std::exp(-total * alpha2 * t);
    const double f_ir = rates.p_ir / total;
    const double f_rs = rates.p_rs / total;
    out.rho11 = rho0.rho11 * (f_ir + f_rs * decay) + rho0.rho44 * f_ir * (1.0 - decay);
    out.rho44 = rho0.rho44 * (f_rs + f_ir * decay) + rho0.rho11 * f_rs * (1.0 - decay);
  }
  double envelope = 0.5 * rates.p_c * alpha2 * t;
  if (t2) envelope += (t / *t2) * (t / *t2);
  out.rho14 = rho0.rho14 *
              std::exp(std::complex<double>(-envelope, rates.omega_14 * alpha2 * t));
  return out;
}

std::vector<GroundState> evolve_numeric_trajectory(
    const GroundState& rho0, const HybridParams& p, const DressedBasis& d,
    double alpha2, const std::vector<double>& times, const NumericOptions& opt) {
  namespace odeint = boost::numeric::odeint;
  if (!(opt.tol > 0.0)) {
    throw Error(ErrorCode::kDomainError, "integration tolerance must be positive");
  }
  std::vector<GroundState> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  if (times.front() < 0.0 || !std::is_sorted(times.begin(), times.end())) {
    throw Error(ErrorCode::kDomainError, "times must be nonnegative and sorted");
  }

  const EffectiveChannels ch = effective_channels(p, d, optimal_offsets(d));
  const EffectiveMasterEquation rhs(ch, alpha2, opt.t2);
  StateVec x = from_ground(rho0);

  std::vector<double> grid;
  grid.reserve(times.size() + 1);
  if (times.front() > 0.0) grid.push_back(0.0);
  grid.insert(grid.end(), times.begin(), times.end());
  const std::size_t skip = grid.size() - times.size();

  if (grid.back() == 0.0) {
    for (std::size_t i = 0; i < times.size(); ++i) out.push_back(rho0);
    return out;
  }
  auto stepper = odeint::make_dense_output(
      opt.tol, opt.tol, odeint::runge_kutta_dopri5<StateVec>());
  std::size_t seen = 0;
  auto observer = [&](const StateVec& s, double) {
    if (seen++ >= skip) out.push_back(to_ground(s));
  };
  try {
    odeint::integrate_times(stepper, std::cref(rhs), x, grid.begin(), grid.end(),
                            grid.back() / 16.0, observer,
                            odeint::max_step_checker(1000000));
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kIntegrationFailure, e.what());
  }
  return out;
}

GroundState evolve_numeric(const GroundState& rho0, const HybridParams& p,
                           const DressedBasis& d, double alpha2, double t,
                           const NumericOptions& opt) {
  return evolve_numeric_trajectory(rho0, p, d, alpha2, {t}, opt).back();
}

}  // namespace molqi
