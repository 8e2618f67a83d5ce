#include "les/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "les/core_model.hpp"

namespace les {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
	std::ostringstream out;
	out << "invalid scenario:";
	for (const auto& v : violations) out << "\n  - " << v;
	return out.str();
}

class Checker {
public:
	void require(bool ok, const std::string& message) {
		if (!ok) violations.push_back(message);
	}

	std::vector<std::string> violations;
};

void check_series(Checker& c, const std::vector<double>& series, int horizon, const std::string& name) {
	if (horizon >= 1) {
		c.require(series.size() == static_cast<std::size_t>(horizon),
		          name + " must have " + std::to_string(horizon) + " entries (has " +
		              std::to_string(series.size()) + ")");
	}
}

void check_load(Checker& c, const LoadSpec& load, int horizon, const std::string& path) {
	const std::string name = path + " (" + load.name + ")";
	c.require(load.packets_required >= 1, name + ".packets_required must be >= 1");
	c.require(load.packet_energy > 0.0, name + ".packet_energy must be > 0");
	c.require(load.request_slot >= 0, name + ".request_slot must be >= 0");
	c.require(load.request_slot <= load.latest_start, name + ".latest_start must be >= request_slot");
	c.require(load.latest_start < horizon, name + ".latest_start must be < horizon");
	c.require(load.max_delay >= 0, name + ".max_delay must be >= 0");
	c.require(load.latest_start - load.request_slot <= load.max_delay,
	          name + ".latest_start - request_slot exceeds max_delay");
	if (load.contiguous) {
		c.require(load.latest_start + load.packets_required - 1 < horizon,
		          name + " contiguous run starting at latest_start overflows the horizon");
	} else if (load.request_slot >= 0 && load.request_slot < horizon && load.packets_required >= 1) {
		c.require(load_window(load, horizon).width() >= load.packets_required,
		          name + " window too small to hold packets_required");
	}
}

void check_home(Checker& c, const HomeProfile& home, int horizon, const std::string& path) {
	c.require(!home.loads.empty(), path + ".loads must not be empty");
	for (std::size_t l = 0; l < home.loads.size(); ++l) {
		check_load(c, home.loads[l], horizon, path + ".loads[" + std::to_string(l) + "]");
	}
	const PvSpec& pv = home.pv;
	c.require(pv.efficiency > 0.0 && pv.efficiency <= 1.0, path + ".pv.efficiency must be in (0, 1]");
	c.require(pv.area > 0.0, path + ".pv.area must be > 0");
	c.require(pv.max_output > 0.0, path + ".pv.max_output must be > 0");

	const EssSpec& ess = home.ess;
	c.require(ess.floor >= 0.0, path + ".ess.floor must be >= 0");
	c.require(ess.floor <= ess.initial_level, path + ".ess.initial_level must be >= floor");
	c.require(ess.initial_level <= ess.capacity, path + ".ess.initial_level must be <= capacity");
	c.require(ess.decay > 0.0 && ess.decay <= 1.0, path + ".ess.decay must be in (0, 1]");
	c.require(ess.charge_eff > 0.0 && ess.charge_eff <= 1.0, path + ".ess.charge_eff must be in (0, 1]");
	c.require(ess.discharge_eff > 0.0 && ess.discharge_eff <= 1.0,
	          path + ".ess.discharge_eff must be in (0, 1]");
	c.require(ess.max_charge_rate > 0.0, path + ".ess.max_charge_rate must be > 0");
	c.require(ess.max_discharge_rate > 0.0, path + ".ess.max_discharge_rate must be > 0");
	c.require(ess.kappa_charge >= 0.0, path + ".ess.kappa_charge must be >= 0");
	c.require(ess.kappa_discharge >= 0.0, path + ".ess.kappa_discharge must be >= 0");
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

Window load_window(const LoadSpec& load, int horizon) {
	return {load.request_slot, std::min(horizon - 1, load.latest_start + load.packets_required - 1)};
}

std::vector<std::string> scenario_violations(const Scenario& raw) {
	Checker c;
	c.require(raw.horizon >= 1, "horizon must be >= 1");
	c.require(raw.slot_duration > 0.0, "slot_duration must be > 0");
	c.require(raw.packet_quantum > 0.0, "packet_quantum must be > 0");
	c.require(raw.num_prosumers >= 0, "num_prosumers must be >= 1 (or 0 for the number of homes)");
	c.require(!raw.homes.empty(), "homes must contain at least one home");

	check_series(c, raw.tariff.grid_buy, raw.horizon, "tariff.grid_buy");
	check_series(c, raw.tariff.grid_sell, raw.horizon, "tariff.grid_sell");
	const std::size_t slots = std::min(raw.tariff.grid_buy.size(), raw.tariff.grid_sell.size());
	for (std::size_t t = 0; t < slots; ++t) {
		const double buy = raw.tariff.grid_buy[t];
		const double sell = raw.tariff.grid_sell[t];
		c.require(sell > 0.0 && sell < buy, "tariff slot " + std::to_string(t) +
		                                        ": requires 0 < grid_sell < grid_buy");
	}

	check_series(c, raw.weather.irradiance, raw.horizon, "weather.irradiance");
	check_series(c, raw.weather.outdoor_temp, raw.horizon, "weather.outdoor_temp");
	for (std::size_t t = 0; t < raw.weather.irradiance.size(); ++t) {
		c.require(raw.weather.irradiance[t] >= 0.0,
		          "weather.irradiance[" + std::to_string(t) + "] must be >= 0");
	}

	c.require(raw.weights.w_delay >= 0.0, "weights.w_delay must be >= 0");
	c.require(raw.weights.w_penalty >= 0.0, "weights.w_penalty must be >= 0");
	c.require(raw.weights.export_cap >= 0.0, "weights.export_cap must be >= 0");

	for (std::size_t b = 0; b < raw.homes.size(); ++b) {
		check_home(c, raw.homes[b], raw.horizon, "homes[" + std::to_string(b) + "]");
	}
	return std::move(c.violations);
}

ValidatedScenario validate_scenario(Scenario raw) {
	auto violations = scenario_violations(raw);
	if (!violations.empty()) throw ScenarioError(std::move(violations));

	if (raw.num_prosumers == 0) raw.num_prosumers = static_cast<int>(raw.homes.size());

	ValidatedScenario v;
	v.scenario_ = std::move(raw);
	const Scenario& s = v.scenario_;
	const auto horizon = static_cast<std::size_t>(s.horizon);

	for (std::size_t b = 0; b < s.homes.size(); ++b) {
		v.home_offsets_.push_back(v.loads_.size());
		const auto& loads = s.homes[b].loads;
		for (std::size_t l = 0; l < loads.size(); ++l) {
			v.loads_.push_back({static_cast<int>(b), static_cast<int>(l), loads[l], load_window(loads[l], s.horizon)});
		}
		for (std::size_t t = 0; t < horizon; ++t) {
			v.pv_.push_back(pv_output(s.homes[b].pv, s.weather.irradiance[t], s.weather.outdoor_temp[t],
			                          s.slot_duration));
		}
	}
	v.home_offsets_.push_back(v.loads_.size());

	const double cheapest = *std::min_element(s.tariff.grid_buy.begin(), s.tariff.grid_buy.end());
	for (double price : s.tariff.grid_buy) v.lowest_tier_.push_back(price <= cheapest ? 1 : 0);
	return v;
}

std::size_t ValidatedScenario::flat_index(int home, int load) const {
	const auto [begin, end] = home_loads(home);
	if (load < 0 || begin + static_cast<std::size_t>(load) >= end) {
		throw std::out_of_range("load index out of range");
	}
	return begin + static_cast<std::size_t>(load);
}

std::pair<std::size_t, std::size_t> ValidatedScenario::home_loads(int home) const {
	if (home < 0 || home >= num_homes()) throw std::out_of_range("home index out of range");
	const auto h = static_cast<std::size_t>(home);
	return {home_offsets_[h], home_offsets_[h + 1]};
}

std::span<const double> ValidatedScenario::pv_series(int home) const {
	if (home < 0 || home >= num_homes()) throw std::out_of_range("home index out of range");
	const auto horizon = static_cast<std::size_t>(scenario_.horizon);
	return std::span<const double>(pv_).subspan(static_cast<std::size_t>(home) * horizon, horizon);
}

TariffSlot ValidatedScenario::tariff_slot(int slot) const {
	const auto t = static_cast<std::size_t>(slot);
	return {scenario_.tariff.grid_buy.at(t), scenario_.tariff.grid_sell.at(t)};
}

}  // namespace les
