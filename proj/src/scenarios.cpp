#include "molqi/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <map>

#include "molqi/dressed.hpp"
#include "molqi/error.hpp"
#include "molqi/evolution.hpp"
#include "molqi/protocols.hpp"
#include "molqi/rates.hpp"

namespace molqi {

namespace {

#ifndef MOLQI_VERSION
#define MOLQI_VERSION "dev"
#endif

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

std::string label(const char* prefix, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%g", prefix, v);
  return buf;
}

ProtocolInputs inputs_for(const ScenarioConfig& cfg) {
  return protocol_inputs(cfg.params, closed_rate_set(cfg.params, cfg.pd_model));
}

CsvTable fig2b(const ScenarioConfig& cfg) {
  const double xs[] = {0.05, 0.1, 0.2, 0.3, 0.4};
  CsvTable t;
  t.columns = {"y"};
  for (double x : xs) t.columns.push_back(label("pr_norm_x", x));
  const double gc = cfg.params.gamma_c /
                    (cfg.params.gamma_1d + cfg.params.gamma_c + cfg.params.gamma_i);
  for (double y : linspace(0.0, 10.0, cfg.points)) {
    std::vector<double> row = {y};
    for (double x : xs) row.push_back(raman_probability_normalized(x, y, gc));
    t.add_row(row);
  }
  return t;
}

CsvTable fig3b(const ScenarioConfig& cfg) {
  const ProtocolInputs in = inputs_for(cfg);
  CsvTable t;
  t.columns = {"n_bar", "fidelity", "fidelity_linear", "success_prob", "fidelity_t2"};
  for (double n : linspace(0.0, cfg.nbar_max, cfg.points)) {
    const ProtocolResult r = bell_coherent(in, n, false);
    const ProtocolResult rt = bell_coherent(in, n, true);
    t.add_row({n, r.fidelity, r.fidelity_linear, r.success_prob, rt.fidelity});
  }
  return t;
}

CsvTable fig3c(const ScenarioConfig& cfg) {
  const ProtocolInputs in = inputs_for(cfg);
  CsvTable t;
  t.columns = {"n_bar", "s_parameter", "success_prob"};
  for (double n : linspace(0.0, cfg.nbar_max, cfg.points)) {
    const ProtocolResult r = chsh_coherent(in, n);
    t.add_row({n, r.s_parameter, r.success_prob});
  }
  return t;
}

CsvTable fig_s1b(const ScenarioConfig& cfg) {
  CsvTable t;
  t.columns = {"height_nm", "distance_nm", "field_near_kv_m", "field_center_kv_m",
               "field_far_kv_m", "point_charge_kv_m", "iterations"};
  for (double height : cfg.heights_nm) {
    for (double d : linspace(cfg.d_start_nm, cfg.d_stop_nm, cfg.d_points)) {
      Geometry g = cfg.geometry;
      g.waveguide_height = height;
      g.distance = d;
      const FieldSolution s = field_island_fd(g, cfg.grid);
      t.add_row({height, d, s.field_by_position[0], s.field_by_position[1],
                 s.field_by_position[2], field_point_charge(d, g.eps_waveguide),
                 double(s.iterations)});
    }
  }
  return t;
}

CsvTable fig_s4(const ScenarioConfig& cfg) {
  const double nbars[] = {0.5, 1.0, 1.5, 2.0};
  CsvTable t;
  t.columns = {"v_over_omega_q"};
  for (double n : nbars) t.columns.push_back(label("success_prob_nbar", n));
  for (double x : linspace(0.01, 0.49, cfg.points)) {
    HybridParams p = cfg.params;
    p.resonance = true;
    p.v_dd = x * p.omega_q;
    p = validate(p);
    ProtocolInputs in;
    in.p_r = raman_probability(p);
    in.p_ro = raman_outside(p);
    in.eta = p.eta;
    in.pulse_duration = p.pulse_duration;
    std::vector<double> row = {x};
    for (double n : nbars) row.push_back(bell_coherent(in, n).success_prob);
    t.add_row(row);
  }
  return t;
}

CsvTable rates(const ScenarioConfig& cfg) {
  const HybridParams& p = cfg.params;
  const RateSet r = closed_rate_set(p, cfg.pd_model);
  const RateSet n = numeric_rate_set(p, build_dressed(p));
  const double gamma = p.gamma_1d + p.gamma_c + p.gamma_i;
  CsvTable t;
  t.columns = {"p_r", "p_ro", "p_ir", "p_d", "p_rs", "p_c", "omega_14",
               "pr_normalized", "p_ir_over_p_rs", "p_d_printed", "p_d_matrix",
               "p_d_anchored", "numeric_p_r", "numeric_p_ro", "numeric_p_ir",
               "numeric_p_d", "numeric_p_rs", "numeric_omega_14",
               "reflection_on_resonance", "photon_budget"};
  const double zeta2 =
      std::norm(single_molecule_zeta(p, QubitState::kDown, 0.5 * p.g_c1));
  t.add_row({r.p_r, r.p_ro, r.p_ir, r.p_d, r.p_rs, r.p_c, r.omega_14,
             r.p_r * std::pow(gamma / p.gamma_1d, 2), inverse_raman_ratio(p),
             dephasing_probability(p), dephasing_probability_matrix(p),
             dephasing_probability_anchored(p), n.p_r, n.p_ro, n.p_ir, n.p_d,
             n.p_rs, n.omega_14, zeta2, photon_budget(p)});
  return t;
}

CsvTable evolve(const ScenarioConfig& cfg) {
  const HybridParams& p = cfg.params;
  const DressedBasis d = build_dressed(p);
  const RateSet r = numeric_rate_set(p, d);
  const double alpha2 = cfg.nbar / p.pulse_duration;
  GroundState rho0;
  rho0.rho11 = 0.5;
  rho0.rho44 = 0.5;
  rho0.rho14 = 0.5;
  const double horizon = r.p_c * alpha2 > 0.0 ? 10.0 / (r.p_c * alpha2) : p.pulse_duration;
  const std::vector<double> times = linspace(0.0, horizon, cfg.points);
  NumericOptions opt;
  opt.tol = cfg.tol;
  opt.t2 = p.t2;
  const auto numeric = evolve_numeric_trajectory(rho0, p, d, alpha2, times, opt);
  CsvTable t;
  t.columns = {"t", "closed_rho11", "closed_rho44", "closed_abs_rho14",
               "numeric_rho11", "numeric_rho44", "numeric_abs_rho14"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const GroundState c = evolve_closed(rho0, r, alpha2, times[i], p.t2);
    t.add_row({times[i], c.rho11, c.rho44, std::abs(c.rho14), numeric[i].rho11,
               numeric[i].rho44, std::abs(numeric[i].rho14)});
  }
  return t;
}

CsvTable montecarlo(const ScenarioConfig& cfg) {
  const ProtocolInputs in = inputs_for(cfg);
  CsvTable t;
  t.columns = {"protocol", "n_bar", "closed_value", "mc_value", "mc_stderr",
               "closed_success_prob", "mc_success_prob", "mc_success_stderr",
               "clicks"};
  for (int which = 0; which < 2; ++which) {
    for (double n : {0.5, 1.0, 1.5, 2.0}) {
      const Protocol proto = which == 0 ? Protocol::kChsh : Protocol::kBell;
      const ProtocolResult c = which == 0 ? chsh_coherent(in, n) : bell_coherent(in, n);
      const ProtocolResult m = monte_carlo_protocol(proto, in, n, cfg.trials, cfg.seed);
      const double cv = which == 0 ? c.s_parameter : c.fidelity;
      const double mv = which == 0 ? m.s_parameter : m.fidelity;
      const double ms = which == 0 ? m.s_stderr : m.fidelity_stderr;
      t.add_row({double(which), n, cv, mv, ms, c.success_prob, m.success_prob,
                 m.success_stderr, double(m.clicks)});
    }
  }
  t.meta.push_back({"protocol_codes", "0 = chsh, 1 = bell"});
  return t;
}

CsvTable estark(const ScenarioConfig& cfg) {
  CsvTable t;
  t.columns = {"distance_nm", "point_charge_kv_m", "stark_coupling_mhz",
               "first_principles_mhz"};
  for (double d : linspace(cfg.d_start_nm, cfg.d_stop_nm, cfg.points)) {
    const double f = field_point_charge(d, cfg.geometry.eps_waveguide);
    const CouplingEstimate c = coupling_from_field(f, cfg.dipole_debye);
    t.add_row({d, f, c.stark_mhz, c.first_principles_mhz});
  }
  return t;
}

CsvTable chsh(const ScenarioConfig& cfg) {
  const ProtocolInputs in = inputs_for(cfg);
  CsvTable t;
  t.columns = {"coherent", "n_bar", "s_parameter", "success_prob"};
  const ProtocolResult s = chsh_single_photon(in);
  t.add_row({0.0, 1.0, s.s_parameter, s.success_prob});
  const ProtocolResult c = chsh_coherent(in, cfg.nbar);
  t.add_row({1.0, cfg.nbar, c.s_parameter, c.success_prob});
  return t;
}

CsvTable bell(const ScenarioConfig& cfg) {
  const ProtocolInputs in = inputs_for(cfg);
  CsvTable t;
  t.columns = {"coherent", "n_bar", "fidelity", "fidelity_linear", "success_prob",
               "fidelity_t2"};
  const ProtocolResult s = bell_single_photon(in);
  t.add_row({0.0, 1.0, s.fidelity, s.fidelity_linear, s.success_prob, s.fidelity});
  const ProtocolResult c = bell_coherent(in, cfg.nbar, false);
  const ProtocolResult ct = bell_coherent(in, cfg.nbar, true);
  t.add_row({1.0, cfg.nbar, c.fidelity, c.fidelity_linear, c.success_prob, ct.fidelity});
  return t;
}

using Runner = std::function<CsvTable(const ScenarioConfig&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"fig2b", fig2b},       {"fig3b", fig3b}, {"fig3c", fig3c},
      {"figS1b", fig_s1b},    {"figS4", fig_s4}, {"rates", rates},
      {"evolve", evolve},     {"montecarlo", montecarlo},
      {"estark", estark},     {"chsh", chsh},   {"bell", bell},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

CsvTable run_scenario(const ScenarioConfig& cfg) {
  const auto it = registry().find(cfg.scenario);
  if (it == registry().end()) {
    throw Error(ErrorCode::kScenarioUnknown, "'" + cfg.scenario + "'");
  }
  CsvTable t = it->second(cfg);
  std::vector<std::pair<std::string, std::string>> meta = {
      {"artifact", std::string("molqi ") + MOLQI_VERSION}};
  if (cfg.timestamp) {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta.push_back({"timestamp", buf});
  }
  for (auto& kv : describe(cfg)) meta.push_back(kv);
  for (auto& kv : t.meta) meta.push_back(kv);
  t.meta = std::move(meta);
  return t;
}

}  // namespace molqi
