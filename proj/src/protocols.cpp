#include "molqi/protocols.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "molqi/error.hpp"
#include "molqi/evolution.hpp"

namespace molqi {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;
// Measurement angles {Psi_a, Psi_a', Phi_b, Phi_b'}.
constexpr std::array<double, 4> kChshAngles = {kPi / 4.0, 3.0 * kPi / 4.0, 0.0,
                                               kPi / 2.0};

// (1 - exp(-z)) / z, regular at z = 0.
double relax(double z) {
  if (std::abs(z) < 1e-5) return 1.0 - z / 2.0 + z * z / 6.0;
  return -std::expm1(-z) / z;
}

void require_nbar(double n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw Error(ErrorCode::kDomainError, "n_bar must be finite and nonnegative");
  }
}

double chsh_combination(double e_ab, double e_abp, double e_apb, double e_apbp) {
  return e_ab - e_abp + e_apb + e_apbp;
}

// Rates seen by a hybrid after the click: Raman loss of |1>, no inverse
// Raman, light-induced dephasing.
RateSet post_click_rates(const ProtocolInputs& in) {
  RateSet r;
  r.p_rs = in.depletion();
  r.p_d = in.p_d;
  r.p_c = r.p_rs + r.p_d;
  return r;
}

// Fraction of the pulse elapsed at the first click, Bell scheme.
double bell_click_fraction(double a, double u) {
  if (a < 1e-12) return u;
  return -std::log1p(u * std::expm1(-a)) / a;
}

// Fraction of the pulse elapsed at the first click, CHSH scheme: inverts
// G(s) = s (chi2 + q relax(k s)) / (chi2 + q relax(k)).
double chsh_click_fraction(double chi2, double q, double k, double u) {
  const double norm = chi2 + q * relax(k);
  auto g = [&](double s) { return s * (chi2 + q * relax(k * s)) / norm - u; };
  auto dg = [&](double s) { return (chi2 + q * std::exp(-k * s)) / norm; };
  double lo = 0.0;
  double hi = 1.0;
  double s = u;
  for (int it = 0; it < 100; ++it) {
    const double f = g(s);
    if (f > 0.0) hi = s; else lo = s;
    double next = s - f / dg(s);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) < 1e-15) return next;
    s = next;
  }
  return s;
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) carry += (sum - t) + v;
    else carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct Moments {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  void add(double v) {
    sum.add(v);
    sum_sq.add(v * v);
  }
  void merge(const Moments& o) {
    sum.add(o.sum.value());
    sum_sq.add(o.sum_sq.value());
  }
  // Mean and standard error of the mean over n samples.
  std::pair<double, double> mean_stderr(std::uint64_t n) const {
    if (n == 0) return {0.0, 0.0};
    const double mean = sum.value() / n;
    if (n < 2) return {mean, 0.0};
    const double var =
        std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
  }
};

struct Tally {
  std::uint64_t clicks = 0;
  Moments value;
  Moments t2_reduction;
  void merge(const Tally& o) {
    clicks += o.clicks;
    value.merge(o.value);
    t2_reduction.merge(o.t2_reduction);
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in (0, 1) from the (seed, trial, stream) counter.
double uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream) {
  const std::uint64_t h =
      splitmix64(splitmix64(seed ^ splitmix64(trial)) + stream);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

GroundState basis_state(int which) {
  GroundState g;
  g.rho11 = which == 0 ? 1.0 : 0.0;
  g.rho44 = which == 1 ? 1.0 : 0.0;
  g.rho14 = which == 2 ? 1.0 : 0.0;
  return g;
}

// Fidelity with (|14> + sign |41>)/sqrt2 after both hybrids evolve
// independently from w |Psi><Psi| + (1 - w)|44><44|.
double bell_fidelity_after(double w, const RateSet& rates, double flux,
                           double tau, std::optional<double> t2) {
  const GroundState e11 = evolve_closed(basis_state(0), rates, flux, tau, t2);
  const GroundState e44 = evolve_closed(basis_state(1), rates, flux, tau, t2);
  const GroundState e14 = evolve_closed(basis_state(2), rates, flux, tau, t2);
  const double direct = e11.rho11 * e44.rho44;
  const double swapped = e11.rho44 * e44.rho11;
  const double coherent = std::norm(e14.rho14);
  const double garbage = e44.rho11 * e44.rho44;
  return w * 0.5 * (direct + swapped + coherent) + (1.0 - w) * garbage;
}

}  // namespace

ProtocolInputs protocol_inputs(const HybridParams& p, const RateSet& rates) {
  ProtocolInputs in;
  in.p_r = rates.p_r;
  in.p_ro = rates.p_ro;
  in.p_d = rates.p_d;
  in.eta = p.eta;
  in.pulse_duration = p.pulse_duration;
  in.t2 = p.t2;
  return in;
}

double balanced_chi2(double p_r) { return p_r / (1.0 + p_r); }

ProtocolResult chsh_single_photon(const ProtocolInputs& in) {
  ProtocolResult r;
  // Joint click/projection probabilities give E = sin(Psi - Phi).
  auto correlator = [](double psi, double phi) {
    const double same = 0.25 * (1.0 + std::sin(psi - phi));
    const double diff = 0.25 * (1.0 - std::sin(psi - phi));
    return (2.0 * same - 2.0 * diff) / (2.0 * same + 2.0 * diff);
  };
  const auto& a = kChshAngles;
  r.s_parameter = chsh_combination(correlator(a[0], a[2]), correlator(a[0], a[3]),
                                   correlator(a[1], a[2]), correlator(a[1], a[3]));
  r.success_prob = 2.0 * in.eta * balanced_chi2(in.p_r);
  r.fidelity = 1.0;
  r.fidelity_linear = 1.0;
  r.n_bar = 1.0;
  return r;
}

ProtocolResult chsh_coherent(const ProtocolInputs& in, double n_bar) {
  require_nbar(n_bar);
  const double a = in.depletion();
  const double c = 1.0 / (1.0 + in.p_r);
  const double chi2 = balanced_chi2(in.p_r);
  const double half = 0.5 * n_bar;
  const double denom = chi2 + in.p_r * c * relax(a * n_bar * c);

  ProtocolResult r;
  r.n_bar = n_bar;
  r.success_prob = in.eta * n_bar * denom;
  r.s_parameter = 2.0 * kSqrt2 * 2.0 * c * in.p_r *
                  std::exp(-half * (a + in.p_d) * c) *
                  relax(half * (a - in.p_d) * c) / denom;
  r.fidelity = r.s_parameter / (2.0 * kSqrt2);
  r.fidelity_linear = r.fidelity;
  return r;
}

ProtocolResult bell_single_photon(const ProtocolInputs& in) {
  ProtocolResult r;
  r.fidelity = 1.0;
  r.fidelity_linear = 1.0;
  r.success_prob = in.eta * in.p_r;
  r.n_bar = 1.0;
  return r;
}

ProtocolResult bell_coherent(const ProtocolInputs& in, double n_bar,
                             bool with_t2) {
  require_nbar(n_bar);
  const double a = in.depletion();
  const double half = 0.5 * n_bar;

  ProtocolResult r;
  r.n_bar = n_bar;
  r.success_prob = 2.0 * in.eta * in.p_r * half * relax(a * half);
  r.fidelity_linear = 1.0 - (a + 0.25 * in.p_d) * half;

  if (!with_t2 || !in.t2 || n_bar == 0.0) {
    r.fidelity = 0.5 * std::exp(-a * half) *
                 (1.0 + std::exp(-in.p_d * half) * relax((a - in.p_d) * half) /
                            relax(a * half));
    return r;
  }
  // Click-time average of exp(-p_d n tau/2 - 2 (tau/T2)^2) with click
  // density proportional to exp(-a n s/2); s, tau as fractions of T.
  const double ratio = in.pulse_duration / *in.t2;
  auto weight = [&](double s) { return std::exp(-a * half * s); };
  auto coherence = [&](double s) {
    const double tau = 1.0 - s;
    return weight(s) *
           std::exp(-in.p_d * half * tau - 2.0 * ratio * ratio * tau * tau);
  };
  using boost::math::quadrature::gauss_kronrod;
  const double num = gauss_kronrod<double, 61>::integrate(coherence, 0.0, 1.0, 8, 1e-14);
  const double den = relax(a * half);
  r.fidelity = 0.5 * std::exp(-a * half) * (1.0 + num / den);
  return r;
}

ProtocolResult monte_carlo_protocol(Protocol which, const ProtocolInputs& in,
                                    double n_bar, std::uint64_t n_trials,
                                    std::uint64_t seed,
                                    const MonteCarloOptions& opt) {
  require_nbar(n_bar);
  if (n_trials < 1) {
    throw Error(ErrorCode::kDomainError, "n_trials must be at least 1");
  }
  const bool chsh = which == Protocol::kChsh;
  const ProtocolResult closed =
      chsh ? chsh_coherent(in, n_bar) : bell_coherent(in, n_bar, false);
  const double p_click = closed.success_prob;
  const double t_pulse = in.pulse_duration;
  const double flux = n_bar / t_pulse;
  const double a = in.depletion();
  const double c = 1.0 / (1.0 + in.p_r);
  const double chi2 = balanced_chi2(in.p_r);
  const RateSet rates = post_click_rates(in);
  const std::optional<double> t2 = opt.with_t2 ? in.t2 : std::nullopt;
  const RateSet dark;

  auto run_trial = [&](std::uint64_t trial, Tally& tally) {
    if (!(uniform(seed, trial, 0) < p_click)) return;
    ++tally.clicks;
    const double u = uniform(seed, trial, 1);
    const double sign = uniform(seed, trial, 2) < 0.5 ? 1.0 : -1.0;
    if (chsh) {
      const double k = a * n_bar * c;
      const double s = chsh_click_fraction(chi2, in.p_r * c, k, u);
      const double decay = std::exp(-k * s);
      const double norm = chi2 + in.p_r * c * decay;
      const double tau = (1.0 - s) * t_pulse;
      std::array<double, 4> e{};
      for (int b = 0; b < 2; ++b) {
        const double phi = kChshAngles[2 + b];
        GroundState rho;
        rho.rho11 = chi2 * decay / norm;
        rho.rho44 = 1.0 - rho.rho11;
        rho.rho14 = -sign * std::complex<double>(0.0, 0.5) *
                    (2.0 * std::sqrt(chi2 * in.p_r * c) * decay / norm) *
                    std::polar(1.0, -phi);
        const GroundState end = evolve_closed(rho, rates, flux * c, tau, t2);
        for (int q = 0; q < 2; ++q) {
          const double psi = kChshAngles[q];
          e[2 * q + b] =
              sign * 2.0 * (end.rho14 * std::polar(1.0, psi)).real();
        }
      }
      tally.value.add(chsh_combination(e[0], e[1], e[2], e[3]));
    } else {
      const double s = bell_click_fraction(a * n_bar / 2.0, u);
      const double w = std::exp(-a * flux * s * t_pulse / 2.0);
      const double tau = (1.0 - s) * t_pulse;
      tally.value.add(bell_fidelity_after(w, rates, flux / 2.0, tau, t2));
      if (t2) {
        tally.t2_reduction.add(1.0 -
                               bell_fidelity_after(1.0, dark, 0.0, tau, t2));
      }
    }
  };

  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t n_chunks = (n_trials + kChunk - 1) / kChunk;
  std::vector<Tally> partial(n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t ci = next++; ci < n_chunks; ci = next++) {
      const std::uint64_t end = std::min(n_trials, (ci + 1) * kChunk);
      for (std::uint64_t t = ci * kChunk; t < end; ++t) run_trial(t, partial[ci]);
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, n_chunks));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Tally total;
  for (const Tally& t : partial) total.merge(t);

  ProtocolResult r;
  r.n_bar = n_bar;
  r.trials = n_trials;
  r.clicks = total.clicks;
  const double p_hat = static_cast<double>(total.clicks) / n_trials;
  r.success_prob = p_hat;
  r.success_stderr = std::sqrt(p_hat * (1.0 - p_hat) / n_trials);
  const auto [mean, se] = total.value.mean_stderr(total.clicks);
  if (chsh) {
    r.s_parameter = mean;
    r.s_stderr = se;
    r.fidelity = mean / (2.0 * kSqrt2);
    r.fidelity_stderr = se / (2.0 * kSqrt2);
  } else {
    r.fidelity = mean;
    r.fidelity_stderr = se;
    const auto [red, red_se] = total.t2_reduction.mean_stderr(total.clicks);
    r.t2_reduction = red;
    r.t2_reduction_stderr = red_se;
  }
  r.fidelity_linear = closed.fidelity_linear;
  return r;
}

}  // namespace molqi
