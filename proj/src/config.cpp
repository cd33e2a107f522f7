#include "molqi/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "molqi/error.hpp"
#include "molqi/units.hpp"

namespace molqi {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw Error(ErrorCode::kConfigParseError, what);
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  while (first < last && std::isspace(static_cast<unsigned char>(*first))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(last[-1]))) --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last || !std::isfinite(v)) {
    bad("key '" + key + "': '" + value + "' is not a finite number");
  }
  return v;
}

std::uint64_t to_count(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
    bad("key '" + key + "': '" + value + "' is not a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "off" || value == "0" || value == "no") return false;
  bad("key '" + key + "': '" + value + "' is not a boolean");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) bad("key '" + key + "' is empty");
  return out;
}

MoleculePosition to_position(const std::string& value) {
  if (value == "near") return MoleculePosition::kNearEdge;
  if (value == "center") return MoleculePosition::kCenter;
  if (value == "far") return MoleculePosition::kFarEdge;
  bad("unknown molecule position '" + value + "'");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void apply_param(HybridParams& p, const std::string& key, const std::string& value) {
  if (key == "gamma_1d") p.gamma_1d = to_double(key, value);
  else if (key == "gamma_c") p.gamma_c = to_double(key, value);
  else if (key == "gamma_i") p.gamma_i = to_double(key, value);
  else if (key == "g_c1") p.g_c1 = to_double(key, value);
  else if (key == "g_c2") p.g_c2 = to_double(key, value);
  else if (key == "g_c1_mhz") p.g_c1 = units::mhz_to_gamma(to_double(key, value));
  else if (key == "g_c2_mhz") p.g_c2 = units::mhz_to_gamma(to_double(key, value));
  else if (key == "g_m1") p.g_m1 = to_double(key, value);
  else if (key == "g_m2") p.g_m2 = to_double(key, value);
  else if (key == "v_dd") p.v_dd = to_double(key, value);
  else if (key == "delta_0") p.delta_0 = to_double(key, value);
  else if (key == "omega_q") p.omega_q = to_double(key, value);
  else if (key == "omega_q_mhz") p.omega_q = units::mhz_to_gamma(to_double(key, value));
  else if (key == "delta") p.delta = to_double(key, value);
  else if (key == "eta") p.eta = to_double(key, value);
  else if (key == "t2") p.t2 = to_double(key, value);
  else if (key == "t2_ns") p.t2 = units::ns_to_gamma_time(to_double(key, value));
  else if (key == "pulse_duration") p.pulse_duration = to_double(key, value);
  else if (key == "pulse_ns") p.pulse_duration = units::ns_to_gamma_time(to_double(key, value));
  else if (key == "resonance") p.resonance = to_bool(key, value);
  else bad("unknown key 'params." + key + "'");
}

void apply_geometry(ScenarioConfig& cfg, const std::string& key,
                    const std::string& value) {
  Geometry& g = cfg.geometry;
  if (key == "island_length_nm") g.island_length = to_double(key, value);
  else if (key == "island_width_nm") g.island_width = to_double(key, value);
  else if (key == "island_height_nm") g.island_height = to_double(key, value);
  else if (key == "waveguide_width_nm") g.waveguide_width = to_double(key, value);
  else if (key == "waveguide_height_nm") g.waveguide_height = to_double(key, value);
  else if (key == "distance_nm") g.distance = to_double(key, value);
  else if (key == "eps_waveguide") g.eps_waveguide = to_double(key, value);
  else if (key == "eps_substrate") g.eps_substrate = to_double(key, value);
  else if (key == "eps_vacuum") g.eps_vacuum = to_double(key, value);
  else if (key == "position") g.position = to_position(value);
  else if (key == "edge_inset_nm") g.edge_inset = to_double(key, value);
  else if (key == "grid_nm") cfg.grid.spacing = to_double(key, value);
  else if (key == "box_factor") cfg.grid.box_factor = to_double(key, value);
  else if (key == "heights_nm") cfg.heights_nm = to_list(key, value);
  else if (key == "d_start_nm") cfg.d_start_nm = to_double(key, value);
  else if (key == "d_stop_nm") cfg.d_stop_nm = to_double(key, value);
  else if (key == "d_points") cfg.d_points = int(to_count(key, value));
  else if (key == "dipole_debye") cfg.dipole_debye = to_double(key, value);
  else bad("unknown key 'geometry." + key + "'");
}

void apply_scenario(ScenarioConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "name") cfg.scenario = value;
  else if (key == "seed") cfg.seed = to_count(key, value);
  else if (key == "out") cfg.out_path = value;
  else if (key == "tol") cfg.tol = to_double(key, value);
  else if (key == "nbar") cfg.nbar = to_double(key, value);
  else if (key == "nbar_max") cfg.nbar_max = to_double(key, value);
  else if (key == "points") cfg.points = int(to_count(key, value));
  else if (key == "trials") cfg.trials = to_count(key, value);
  else if (key == "pd_model") cfg.pd_model = parse_dephasing_model(value);
  else if (key == "timestamp") cfg.timestamp = to_bool(key, value);
  else bad("unknown key 'scenario." + key + "'");
}

}  // namespace

void apply_setting(ScenarioConfig& cfg, const std::string& section,
                   const std::string& key, const std::string& value) {
  if (section == "params" && key == "v_over_omega_q") {
    cfg.v_over_omega_q = to_double(key, value);
  } else if (section == "params") apply_param(cfg.params, key, value);
  else if (section == "geometry") apply_geometry(cfg, key, value);
  else if (section == "scenario") apply_scenario(cfg, key, value);
  else bad("unknown section '" + section + "'");
}

void apply_config_text(ScenarioConfig& cfg, std::istream& in) {
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_config(in);
  } catch (const CLI::Error& e) {
    bad(e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    if (item.parents.size() != 1) bad("key '" + item.fullname() + "' outside a section");
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) {
      if (i) value += ",";
      value += item.inputs[i];
    }
    apply_setting(cfg, item.parents[0], item.name, value);
  }
}

void apply_config_file(ScenarioConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  apply_config_text(cfg, in);
}

ScenarioConfig resolve(ScenarioConfig cfg) {
  if (cfg.v_over_omega_q) cfg.params.v_dd = *cfg.v_over_omega_q * cfg.params.omega_q;
  cfg.params = validate(cfg.params);
  if (!(cfg.tol > 0.0)) bad("tol must be positive");
  if (!(cfg.nbar >= 0.0)) bad("nbar must be nonnegative");
  if (!(cfg.nbar_max > 0.0)) bad("nbar_max must be positive");
  if (cfg.points < 2) bad("points must be at least 2");
  if (cfg.d_points < 2) bad("d_points must be at least 2");
  if (!(cfg.d_start_nm > 0.0) || !(cfg.d_stop_nm > cfg.d_start_nm)) {
    bad("distance sweep needs 0 < d_start < d_stop");
  }
  if (cfg.trials < 1) bad("trials must be at least 1");
  if (cfg.heights_nm.empty()) cfg.heights_nm = {cfg.geometry.waveguide_height};
  return cfg;
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg) {
  const HybridParams& p = cfg.params;
  const Geometry& g = cfg.geometry;
  std::vector<std::pair<std::string, std::string>> kv = {
      {"scenario", cfg.scenario},
      {"gamma_phys_rad_per_s", fmt(units::kGammaRadPerSecond)},
      {"params.gamma_1d", fmt(p.gamma_1d)},
      {"params.gamma_c", fmt(p.gamma_c)},
      {"params.gamma_i", fmt(p.gamma_i)},
      {"params.g_c1", fmt(p.g_c1)},
      {"params.g_c2", fmt(p.g_c2)},
      {"params.g_m1", fmt(p.g_m1)},
      {"params.g_m2", fmt(p.g_m2)},
      {"params.v_dd", fmt(p.v_dd)},
      {"params.delta_0", fmt(p.delta_0)},
      {"params.omega_q", fmt(p.omega_q)},
      {"params.delta", fmt(p.delta)},
      {"params.eta", fmt(p.eta)},
      {"params.t2", p.t2 ? fmt(*p.t2) : "none"},
      {"params.pulse_duration", fmt(p.pulse_duration)},
      {"params.resonance", p.resonance ? "true" : "false"},
      {"geometry.island_nm", fmt(g.island_length) + "x" + fmt(g.island_width) + "x" +
                                 fmt(g.island_height)},
      {"geometry.waveguide_width_nm", fmt(g.waveguide_width)},
      {"geometry.waveguide_height_nm", fmt(g.waveguide_height)},
      {"geometry.distance_nm", fmt(g.distance)},
      {"geometry.eps", fmt(g.eps_waveguide) + "," + fmt(g.eps_substrate) + "," +
                           fmt(g.eps_vacuum)},
      {"geometry.grid_nm", fmt(cfg.grid.spacing)},
      {"geometry.box_factor", fmt(cfg.grid.box_factor)},
      {"geometry.dipole_debye", fmt(cfg.dipole_debye)},
      {"scenario.pd_model", dephasing_model_name(cfg.pd_model)},
      {"scenario.seed", std::to_string(cfg.seed)},
      {"scenario.tol", fmt(cfg.tol)},
      {"scenario.nbar", fmt(cfg.nbar)},
      {"scenario.nbar_max", fmt(cfg.nbar_max)},
      {"scenario.points", std::to_string(cfg.points)},
      {"scenario.trials", std::to_string(cfg.trials)},
  };
  return kv;
}

}  // namespace molqi
