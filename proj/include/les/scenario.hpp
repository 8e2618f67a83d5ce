#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "les/pricing.hpp"
#include "les/storage.hpp"

namespace les {

// A shiftable appliance whose demand is quantized into energy packets.
struct LoadSpec {
	std::string name;
	int packets_required = 1;
	double packet_energy = 0.5;  // kWh per packet
	int request_slot = 0;        // earliest allowed start
	int latest_start = 0;
	int max_delay = 0;           // slots
	bool contiguous = false;
};

struct PvSpec {
	double efficiency = 0.18;
	double area = 16.0;        // m^2
	double max_output = 2.85;  // kWh per slot
};

struct HomeProfile {
	std::vector<LoadSpec> loads;
	PvSpec pv;
	EssSpec ess;
};

struct WeatherSeries {
	std::vector<double> irradiance;    // kW/m^2
	std::vector<double> outdoor_temp;  // degC
};

struct ObjectiveWeights {
	double w_delay = 10.0;    // cents per unit of average delay
	double w_penalty = 1000.0;
	double export_cap = 1.0;  // N_max, kWh per slot
};

struct Scenario {
	int horizon = 24;
	double slot_duration = 1.0;
	double packet_quantum = 0.5;
	// Normalization divisor J. Zero means "number of homes".
	int num_prosumers = 0;
	std::uint64_t seed_default = 1;
	std::vector<HomeProfile> homes;
	GridTariff tariff;
	WeatherSeries weather;
	ObjectiveWeights weights;
};

class ScenarioError : public std::runtime_error {
public:
	explicit ScenarioError(std::vector<std::string> violations);

	const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
	std::vector<std::string> violations_;
};

// Inclusive slot range a load's packets may occupy.
struct Window {
	int first = 0;
	int last = 0;

	int width() const { return last - first + 1; }
	bool contains(int slot) const { return slot >= first && slot <= last; }
};

struct FlatLoad {
	int home = 0;
	int index = 0;  // position within the home's load list
	LoadSpec spec;
	Window window;
};

class ValidatedScenario;

/// Lists every invariant violation of a raw scenario, each naming the offending field.
std::vector<std::string> scenario_violations(const Scenario& raw);

/// Checks all invariants, fills defaults and precomputes derived series.
/// Throws ScenarioError carrying the full list of violations.
ValidatedScenario validate_scenario(Scenario raw);

class ValidatedScenario {
public:
	const Scenario& scenario() const noexcept { return scenario_; }
	const Scenario* operator->() const noexcept { return &scenario_; }

	int horizon() const noexcept { return scenario_.horizon; }
	int num_homes() const noexcept { return static_cast<int>(scenario_.homes.size()); }
	int prosumers() const noexcept { return scenario_.num_prosumers; }

	std::span<const FlatLoad> loads() const noexcept { return loads_; }
	std::size_t load_count() const noexcept { return loads_.size(); }
	std::size_t flat_index(int home, int load) const;
	/// Flat load indices [begin, end) belonging to a home.
	std::pair<std::size_t, std::size_t> home_loads(int home) const;

	std::span<const double> pv_series(int home) const;
	TariffSlot tariff_slot(int slot) const;
	/// True when the slot's grid buy price equals the cheapest price of the horizon.
	bool lowest_tier(int slot) const { return lowest_tier_[static_cast<std::size_t>(slot)] != 0; }

private:
	friend ValidatedScenario validate_scenario(Scenario raw);
	ValidatedScenario() = default;

	Scenario scenario_;
	std::vector<FlatLoad> loads_;
	std::vector<std::size_t> home_offsets_;
	std::vector<double> pv_;  // home-major, horizon per home
	std::vector<std::uint8_t> lowest_tier_;
};

/// Feasible slot range of a load: [request_slot, latest_start + packets_required - 1], capped at the horizon.
Window load_window(const LoadSpec& load, int horizon);

}  // namespace les
