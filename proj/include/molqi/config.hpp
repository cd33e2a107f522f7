#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "molqi/electrostatics.hpp"
#include "molqi/params.hpp"
#include "molqi/rates.hpp"

namespace molqi {

// Resolved run configuration. Parameters are held in internal units;
// physical-unit keys are converted on the way in.
struct ScenarioConfig {
  std::string scenario;
  HybridParams params;  // validated before use
  // Overrides params.v_dd with this multiple of omega_q when set.
  std::optional<double> v_over_omega_q;
  Geometry geometry;
  GridSpec grid;
  std::vector<double> heights_nm;  // figS1b waveguide heights
  double d_start_nm = 125.0;
  double d_stop_nm = 500.0;
  int d_points = 4;
  double dipole_debye = 1.0;
  DephasingModel pd_model = DephasingModel::kPrinted;
  std::string out_path;  // empty writes to stdout
  std::uint64_t seed = 20240611;
  double tol = 1e-9;
  bool timestamp = true;
  double nbar = 1.5;
  double nbar_max = 4.0;
  int points = 41;
  std::uint64_t trials = 1000000;
};

// Applies "section.key = value" assignments (sections params, geometry,
// scenario). Throws ConfigParseError on unknown keys or malformed values.
void apply_setting(ScenarioConfig& cfg, const std::string& section,
                   const std::string& key, const std::string& value);

// Parses structured key-value text with [params], [geometry] and
// [scenario] sections.
void apply_config_text(ScenarioConfig& cfg, std::istream& in);
void apply_config_file(ScenarioConfig& cfg, const std::string& path);

// Finalizes cross-field settings (validation of params, sweep sanity).
ScenarioConfig resolve(ScenarioConfig cfg);

// Resolved settings as key/value pairs for the CSV preamble.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg);

}  // namespace molqi
