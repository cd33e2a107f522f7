// Command-line front end: runs one named scenario and writes a CSV.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "molqi/config.hpp"
#include "molqi/error.hpp"
#include "molqi/scenarios.hpp"

namespace {

void apply_assignment(molqi::ScenarioConfig& cfg, const std::string& text) {
  const auto eq = text.find('=');
  const auto dot = text.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw molqi::Error(molqi::ErrorCode::kConfigParseError,
                       "expected section.key=value, got '" + text + "'");
  }
  molqi::apply_setting(cfg, text.substr(0, dot), text.substr(dot + 1, eq - dot - 1),
                       text.substr(eq + 1));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid molecule-waveguide entanglement model"};
  std::string config_path, scenario, out, pd_model;
  std::vector<std::string> sets;
  std::vector<double> heights;
  std::optional<std::uint64_t> seed, trials;
  std::optional<double> tol, nbar, nbar_max, grid;
  std::optional<int> points;
  bool no_timestamp = false;
  bool list = false;

  app.add_option("scenario", scenario, "Scenario name");
  app.add_option("--config", config_path, "Config file ([params]/[geometry]/[scenario])");
  app.add_option("--out", out, "Output CSV path (default stdout)");
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--tol", tol, "Integrator tolerance");
  app.add_option("--nbar", nbar, "Mean photon number for point scenarios");
  app.add_option("--nbar-max", nbar_max, "Upper end of photon-number sweeps");
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_option("--points", points, "Sweep points");
  app.add_option("--H", heights, "Waveguide height in nm (repeatable)");
  app.add_option("--grid", grid, "Finite-volume spacing in nm");
  app.add_option("--pd-model", pd_model, "Dephasing model: printed, matrix, anchored");
  app.add_option("--set", sets, "Override section.key=value (repeatable)");
  app.add_flag("--no-timestamp", no_timestamp, "Omit timestamp from the preamble");
  app.add_flag("--list", list, "List scenarios and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& n : molqi::scenario_names()) std::cout << n << "\n";
    return 0;
  }

  try {
    molqi::ScenarioConfig cfg;
    if (!config_path.empty()) molqi::apply_config_file(cfg, config_path);
    if (!scenario.empty()) cfg.scenario = scenario;
    if (cfg.scenario.empty()) {
      throw molqi::Error(molqi::ErrorCode::kScenarioUnknown, "no scenario given");
    }
    if (!out.empty()) cfg.out_path = out;
    if (seed) cfg.seed = *seed;
    if (tol) cfg.tol = *tol;
    if (nbar) cfg.nbar = *nbar;
    if (nbar_max) cfg.nbar_max = *nbar_max;
    if (trials) cfg.trials = *trials;
    if (points) cfg.points = *points;
    if (!heights.empty()) cfg.heights_nm = heights;
    if (grid) cfg.grid.spacing = *grid;
    if (!pd_model.empty()) cfg.pd_model = molqi::parse_dephasing_model(pd_model);
    if (no_timestamp) cfg.timestamp = false;
    for (const auto& s : sets) apply_assignment(cfg, s);

    const molqi::CsvTable table = molqi::run_scenario(molqi::resolve(cfg));
    if (cfg.out_path.empty()) {
      molqi::write_csv(std::cout, table);
    } else {
      std::ofstream f(cfg.out_path);
      if (!f) {
        throw molqi::Error(molqi::ErrorCode::kConfigParseError,
                           "cannot open " + cfg.out_path);
      }
      molqi::write_csv(f, table);
    }
  } catch (const molqi::Error& e) {
    std::cerr << "molqi: " << e.what() << "\n";
    return molqi::exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "molqi: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
