#include <cmath>
#include <random>

#include "doctest.h"
#include "molqi/dressed.hpp"
#include "molqi/protocols.hpp"
#include "molqi/rates.hpp"
#include "support.hpp"

using namespace molqi;

namespace {

ProtocolInputs working_point_inputs() {
  const HybridParams p = working_point();
  return protocol_inputs(p, closed_rate_set(p));
}

constexpr double kTsirelson = 2.8284271247461903;

}  // namespace

TEST_CASE("single-photon protocols") {
  ProtocolInputs in = working_point_inputs();
  const ProtocolResult chsh = chsh_single_photon(in);
  CHECK(chsh.s_parameter == doctest::Approx(kTsirelson).epsilon(1e-15));
  CHECK(chsh.success_prob == doctest::Approx(2.0 * 0.5 * in.p_r / (1.0 + in.p_r)));
  CHECK(chsh.success_prob == doctest::Approx(7.6e-3).epsilon(0.02));

  const ProtocolResult bell = bell_single_photon(in);
  CHECK(bell.fidelity == 1.0);
  CHECK(bell.success_prob == doctest::Approx(0.5 * in.p_r));

  in.eta = 0.0;
  CHECK(chsh_single_photon(in).success_prob == 0.0);
  in.eta = 1.0;
  CHECK(bell_single_photon(in).success_prob == in.p_r);
}

TEST_CASE("coherent CHSH") {
  ProtocolInputs in = working_point_inputs();
  CHECK(chsh_coherent(in, 1e-6).s_parameter == doctest::Approx(kTsirelson).epsilon(1e-6));
  CHECK(chsh_coherent(in, 0.0).s_parameter == doctest::Approx(kTsirelson).epsilon(1e-12));
  const ProtocolResult two = chsh_coherent(in, 2.0);
  CHECK(two.s_parameter >= 2.3);
  CHECK(two.success_prob == doctest::Approx(1.5e-2).epsilon(0.2 / 1.5));

  // The small-nbar success probability approaches nbar times the
  // single-photon value.
  const double n = 1e-4;
  CHECK(chsh_coherent(in, n).success_prob / n ==
        doctest::Approx(chsh_single_photon(in).success_prob).epsilon(1e-3));

  double prev = kTsirelson;
  for (int i = 1; i <= 100; ++i) {
    const double s = chsh_coherent(in, 0.1 * i).s_parameter;
    CHECK(s <= prev + 1e-15);
    CHECK(s <= kTsirelson);
    prev = s;
  }

  ProtocolInputs lossy = in;
  lossy.eta = 0.25;
  CHECK(chsh_coherent(lossy, 2.0).success_prob ==
        doctest::Approx(0.5 * two.success_prob).epsilon(1e-14));
  CHECK(chsh_coherent(lossy, 2.0).s_parameter == two.s_parameter);
}

TEST_CASE("coherent Bell pair") {
  const ProtocolInputs in = working_point_inputs();
  const ProtocolResult b = bell_coherent(in, 1.5);
  CHECK(b.success_prob == doctest::Approx(5.6e-3).epsilon(0.3 / 5.6));

  const ProtocolResult tiny = bell_coherent(in, 1e-7);
  CHECK(tiny.fidelity == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(tiny.success_prob < 1e-8);
  CHECK(tiny.success_prob / 1e-7 == doctest::Approx(in.eta * in.p_r).epsilon(1e-6));

  // Saturation of the success probability.
  CHECK(bell_coherent(in, 1e6).success_prob ==
        doctest::Approx(2.0 * in.eta * in.p_r / in.depletion()).epsilon(1e-5));
}

TEST_CASE("Bell fidelity agrees with its first-order expansion to O(nbar^2)") {
  std::mt19937_64 rng(51);
  for (int draw = 0; draw < 30; ++draw) {
    const HybridParams p = testing::moderate_draw(rng);
    const ProtocolInputs in = protocol_inputs(p, numeric_rate_set(p, build_dressed(p)));
    double c_prev = -1.0;
    for (double n : {0.02, 0.01, 0.005}) {
      const ProtocolResult r = bell_coherent(in, n);
      const double c = std::abs(r.fidelity - r.fidelity_linear) / (n * n);
      if (c_prev >= 0.0) CHECK(c == doctest::Approx(c_prev).epsilon(0.05));
      c_prev = c;
    }
  }
}

TEST_CASE("qubit dephasing reduces the Bell fidelity by a bounded amount") {
  ProtocolInputs in = working_point_inputs();
  in.pulse_duration = 6.283185307179586;
  in.t2 = 62.83185307179586;
  const double ratio2 = 0.01;
  const double plain = bell_coherent(in, 1.5, false).fidelity;
  const double with_t2 = bell_coherent(in, 1.5, true).fidelity;
  CHECK(with_t2 < plain);

  // With no light-induced loss the dephasing alone costs the
  // click-averaged 1 - exp(-2 (tau/T2)^2) over 2, close to ratio2/3.
  ProtocolInputs clean = in;
  clean.p_ro = 0.0;
  clean.p_d = 0.0;
  clean.p_r = 1e-12;
  const double red = 1.0 - bell_coherent(clean, 1e-6, true).fidelity;
  CHECK(red == doctest::Approx(ratio2 / 3.0).epsilon(0.01));
}

TEST_CASE("Monte Carlo is deterministic and thread-count independent") {
  const ProtocolInputs in = working_point_inputs();
  MonteCarloOptions one;
  one.threads = 1;
  MonteCarloOptions three;
  three.threads = 3;
  for (auto which : {Protocol::kChsh, Protocol::kBell}) {
    const ProtocolResult a = monte_carlo_protocol(which, in, 1.5, 300000, 99, one);
    const ProtocolResult b = monte_carlo_protocol(which, in, 1.5, 300000, 99, three);
    const ProtocolResult c = monte_carlo_protocol(which, in, 1.5, 300000, 99, one);
    CHECK(a.clicks == b.clicks);
    CHECK(a.fidelity == b.fidelity);
    CHECK(a.s_parameter == b.s_parameter);
    CHECK(a.fidelity == c.fidelity);
    CHECK(a.s_parameter == c.s_parameter);
    const ProtocolResult other = monte_carlo_protocol(which, in, 1.5, 300000, 100, one);
    CHECK(other.clicks != a.clicks);
  }
  const ProtocolResult none = monte_carlo_protocol(Protocol::kBell, in, 0.0, 10000, 1);
  CHECK(none.clicks == 0);
  CHECK(none.success_prob == 0.0);
}

TEST_CASE("Monte Carlo agrees with the closed forms") {
  const ProtocolInputs in = working_point_inputs();
  for (double n : {0.5, 1.0, 1.5, 2.0}) {
    const ProtocolResult mc = monte_carlo_protocol(Protocol::kChsh, in, n, 1000000, 2024);
    const ProtocolResult cf = chsh_coherent(in, n);
    CHECK(std::abs(mc.s_parameter - cf.s_parameter) <= 3.0 * mc.s_stderr);
    CHECK(std::abs(mc.success_prob - cf.success_prob) <= 3.0 * mc.success_stderr);

    const ProtocolResult mb = monte_carlo_protocol(Protocol::kBell, in, n, 1000000, 2025);
    const ProtocolResult bf = bell_coherent(in, n);
    CHECK(std::abs(mb.fidelity - bf.fidelity) <= 3.0 * mb.fidelity_stderr);
    CHECK(std::abs(mb.success_prob - bf.success_prob) <= 3.0 * mb.success_stderr);
  }
}

TEST_CASE("Monte Carlo with qubit dephasing matches the closed form") {
  ProtocolInputs in = working_point_inputs();
  in.t2 = 10.0 * in.pulse_duration;
  MonteCarloOptions opt;
  opt.with_t2 = true;
  const ProtocolResult mc = monte_carlo_protocol(Protocol::kBell, in, 1.5, 2000000, 7, opt);
  const ProtocolResult cf = bell_coherent(in, 1.5, true);
  CHECK(std::abs(mc.fidelity - cf.fidelity) <= 3.0 * mc.fidelity_stderr);
}

TEST_CASE("success probability vanishes as the antisymmetric state goes dark") {
  double prev = 1.0;
  for (double x : {0.45, 0.49, 0.499, 0.4999}) {
    HybridParams p = working_point();
    p.v_dd = x * p.omega_q;
    p = validate(p);
    ProtocolInputs in;
    in.p_r = raman_probability(p);
    in.p_ro = raman_outside(p);
    in.eta = 0.5;
    const double ps = bell_coherent(in, 1.5).success_prob;
    CHECK(ps < prev);
    prev = ps;
  }
  CHECK(prev < 1e-5);
}
