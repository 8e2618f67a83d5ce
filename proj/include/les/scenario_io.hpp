#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "les/optimizer.hpp"
#include "les/scenario.hpp"

namespace les {

// File unreadable or not JSON.
class ScenarioIoError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

struct LoadedScenario {
	Scenario scenario;
	AlgoConfig optimizer;  // defaults overridden by the optional `optimizer` block
};

/// Maps a scenario document onto the data model. Missing required keys and wrongly typed fields are
/// collected and thrown together as a ScenarioError; invariants are left to validate_scenario().
LoadedScenario parse_scenario(const nlohmann::json& doc);

LoadedScenario read_scenario_file(const std::filesystem::path& path);

nlohmann::json scenario_to_json(const Scenario& scn, const AlgoConfig& optimizer);

}  // namespace les
