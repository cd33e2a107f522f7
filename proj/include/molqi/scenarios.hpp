#pragma once

#include <string>
#include <vector>

#include "molqi/config.hpp"
#include "molqi/csv.hpp"

namespace molqi {

const std::vector<std::string>& scenario_names();

// Runs a resolved configuration. Throws ScenarioUnknown or module errors.
CsvTable run_scenario(const ScenarioConfig& cfg);

}  // namespace molqi
