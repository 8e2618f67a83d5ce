#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "les/core_model.hpp"
#include "les/costs.hpp"
#include "les/optimizer.hpp"
#include "les/scenario.hpp"

namespace les::test {

std::filesystem::path source_dir();
std::filesystem::path scenario_path(const std::string& relative);
std::vector<std::filesystem::path> tiny_scenario_paths();

/// Loads and validates a shipped scenario file.
ValidatedScenario load_scenario(const std::string& relative);

/// One home, one load, six slots, constant tariff; small enough to reason about by hand.
Scenario single_load_scenario(int packets, int request, int latest, bool contiguous);

/// Random raw scenario with 1-3 homes and 1-3 loads each over 4-8 slots. Always valid.
Scenario random_scenario(Rng& rng);

/// Independent recomputation of the objective straight from the raw scenario.
/// Shares no code with the library's evaluation pipeline.
CostBreakdown reference_costs(const Scenario& scn, const std::vector<std::vector<std::vector<int>>>& bits);

/// Schedule bits as homes -> loads -> slots.
std::vector<std::vector<std::vector<int>>> nested_bits(const ScheduleMatrix& schedule, const ValidatedScenario& scn);

/// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);

std::string slurp(const std::filesystem::path& path);

}  // namespace les::test
