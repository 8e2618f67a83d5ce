#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "les/scenario_io.hpp"

namespace les::test {

std::filesystem::path source_dir() { return LES_SOURCE_DIR; }

std::filesystem::path scenario_path(const std::string& relative) { return source_dir() / "scenarios" / relative; }

std::vector<std::filesystem::path> tiny_scenario_paths() {
	std::vector<std::filesystem::path> paths;
	for (const auto& entry : std::filesystem::directory_iterator(scenario_path("tiny"))) {
		if (entry.path().extension() == ".json") paths.push_back(entry.path());
	}
	std::sort(paths.begin(), paths.end());
	return paths;
}

ValidatedScenario load_scenario(const std::string& relative) {
	return validate_scenario(read_scenario_file(scenario_path(relative)).scenario);
}

Scenario single_load_scenario(int packets, int request, int latest, bool contiguous) {
	Scenario s;
	s.horizon = 6;
	s.tariff.grid_buy.assign(6, 4.0);
	s.tariff.grid_sell.assign(6, 1.0);
	s.weather.irradiance.assign(6, 0.0);
	s.weather.outdoor_temp.assign(6, 25.0);
	HomeProfile home;
	LoadSpec load;
	load.name = "appliance";
	load.packets_required = packets;
	load.request_slot = request;
	load.latest_start = latest;
	load.max_delay = latest - request;
	load.contiguous = contiguous;
	home.loads.push_back(load);
	home.ess.grid_charging = false;
	s.homes.push_back(home);
	return s;
}

Scenario random_scenario(Rng& rng) {
	Scenario s;
	s.horizon = 4 + static_cast<int>(rng.below(5));
	const auto horizon = static_cast<std::size_t>(s.horizon);
	for (std::size_t t = 0; t < horizon; ++t) {
		const double sell = rng.uniform(0.5, 3.0);
		s.tariff.grid_sell.push_back(sell);
		s.tariff.grid_buy.push_back(sell + rng.uniform(0.1, 8.0));
		s.weather.irradiance.push_back(rng.bernoulli(0.3) ? 0.0 : rng.uniform(0.0, 1.0));
		s.weather.outdoor_temp.push_back(rng.uniform(5.0, 40.0));
	}
	s.tariff.swap_transaction_prices = rng.bernoulli(0.5);
	s.weights.w_delay = rng.uniform(0.0, 20.0);
	s.weights.export_cap = rng.uniform(0.0, 2.0);
	const int homes = 1 + static_cast<int>(rng.below(3));
	s.num_prosumers = rng.bernoulli(0.5) ? 0 : homes + static_cast<int>(rng.below(3));
	for (int b = 0; b < homes; ++b) {
		HomeProfile home;
		home.pv.area = rng.uniform(4.0, 20.0);
		home.pv.max_output = rng.uniform(0.5, 3.0);
		home.ess.capacity = rng.uniform(1.0, 6.0);
		home.ess.floor = rng.uniform(0.0, 0.5);
		home.ess.initial_level = rng.uniform(home.ess.floor, home.ess.capacity);
		home.ess.decay = rng.uniform(0.5, 1.0);
		home.ess.charge_eff = rng.uniform(0.5, 1.0);
		home.ess.discharge_eff = rng.uniform(0.5, 1.0);
		home.ess.max_charge_rate = rng.uniform(0.2, 2.5);
		home.ess.max_discharge_rate = rng.uniform(0.2, 2.5);
		home.ess.kappa_charge = rng.uniform(0.0, 1.0);
		home.ess.kappa_discharge = rng.uniform(0.0, 1.0);
		home.ess.grid_charging = rng.bernoulli(0.5);
		const int loads = 1 + static_cast<int>(rng.below(3));
		for (int l = 0; l < loads; ++l) {
			LoadSpec load;
			load.name = "l" + std::to_string(l);
			load.contiguous = rng.bernoulli(0.5);
			load.packet_energy = rng.bernoulli(0.5) ? 0.5 : 1.0;
			load.packets_required = 1 + static_cast<int>(rng.below(std::min<std::size_t>(3, horizon - 1)));
			const int last_start = s.horizon - load.packets_required;
			load.request_slot = static_cast<int>(rng.below(static_cast<std::size_t>(last_start) + 1));
			load.latest_start =
			    load.request_slot + static_cast<int>(rng.below(static_cast<std::size_t>(last_start - load.request_slot) + 1));
			load.max_delay = load.latest_start - load.request_slot + static_cast<int>(rng.below(2));
			home.loads.push_back(load);
		}
		s.homes.push_back(home);
	}
	return s;
}

namespace {

struct RefPrices {
	double buy;
	double sell;
};

RefPrices ref_prices(double b, double s, double supply, double demand) {
	if (supply == 0.0 && demand == 0.0) return {b, s};
	const double r = demand == 0.0 ? std::numeric_limits<double>::infinity() : supply / demand;
	if (r >= 1.0) return {s, s};
	const double sell = s * b / ((b - s) * r + s);
	const double buy = r <= 0.0 ? b : sell * r + b * (1.0 - r);
	return {buy, sell};
}

}  // namespace

CostBreakdown reference_costs(const Scenario& scn, const std::vector<std::vector<std::vector<int>>>& bits) {
	const int T = scn.horizon;
	const double J = scn.num_prosumers > 0 ? scn.num_prosumers : static_cast<double>(scn.homes.size());
	const double cheapest = *std::min_element(scn.tariff.grid_buy.begin(), scn.tariff.grid_buy.end());
	const double dearest = *std::max_element(scn.tariff.grid_buy.begin(), scn.tariff.grid_buy.end());

	double net = 0.0;
	double wear = 0.0;
	double band = 0.0;
	double delay_sum = 0.0;
	double violation = 0.0;
	for (std::size_t b = 0; b < scn.homes.size(); ++b) {
		const HomeProfile& home = scn.homes[b];
		const EssSpec& e = home.ess;
		double level = e.initial_level;
		for (int t = 0; t < T; ++t) {
			const auto ts = static_cast<std::size_t>(t);
			double demand = 0.0;
			for (std::size_t l = 0; l < home.loads.size(); ++l) {
				if (bits[b][l][ts] != 0) demand += home.loads[l].packet_energy;
			}
			const double raw_pv = home.pv.efficiency * home.pv.area * scn.weather.irradiance[ts] *
			                      (1.0 - 0.005 * (scn.weather.outdoor_temp[ts] - 25.0)) * scn.slot_duration;
			const double pv = std::min(home.pv.max_output, std::max(0.0, raw_pv));
			const double room = std::clamp(std::min(e.max_charge_rate, e.capacity - level), 0.0, e.max_charge_rate);
			const double stock = std::clamp(std::min(e.max_discharge_rate, level - e.floor), 0.0, e.max_discharge_rate);
			const double gb = scn.tariff.grid_buy[ts];
			const auto price = ref_prices(gb, scn.tariff.grid_sell[ts], pv + stock, demand);

			const double own = std::min(demand, pv);
			const double into_ess = std::min(pv - own, room);
			const double exported = std::min(pv - own - into_ess, scn.weights.export_cap);
			const double drawn = std::min(demand - own, stock);
			const double imported = demand - own - drawn;
			const double topped = e.grid_charging && gb == cheapest && drawn == 0.0 ? std::max(0.0, room - into_ess) : 0.0;

			const double charge = into_ess + topped;
			level = std::clamp(e.decay * level + e.charge_eff * charge - e.discharge_eff * drawn, e.floor, e.capacity);
			const double deficit_price = scn.tariff.swap_transaction_prices ? price.buy : price.sell;
			const double surplus_price = scn.tariff.swap_transaction_prices ? price.sell : price.buy;
			net += (imported * deficit_price + topped * gb) - exported * surplus_price;
			wear += (charge > 0.0 ? e.kappa_charge : 0.0) + (drawn > 0.0 ? e.kappa_discharge : 0.0);
			for (double p : {price.buy, price.sell}) band += std::max(0.0, p - dearest) + std::max(0.0, -p);
		}
	}

	for (std::size_t b = 0; b < scn.homes.size(); ++b) {
		for (std::size_t l = 0; l < scn.homes[b].loads.size(); ++l) {
			const LoadSpec& load = scn.homes[b].loads[l];
			const int first = load.request_slot;
			const int last = std::min(T - 1, load.latest_start + load.packets_required - 1);
			const int span = load.latest_start - load.request_slot;
			int placed = 0;
			int runs = 0;
			double late = 0.0;
			bool prev = false;
			for (int t = 0; t < T; ++t) {
				const bool on = bits[b][l][static_cast<std::size_t>(t)] != 0;
				const bool inside = t >= first && t <= last;
				if (on && !inside) violation += 1.0;
				if (on && inside) {
					if (span > 0) late += std::clamp(static_cast<double>(t - (first + placed)) / span, 0.0, 1.0);
					++placed;
					if (!prev) ++runs;
				}
				prev = on && inside;
			}
			delay_sum += placed == 0 ? 1.0 : late / placed;
			violation += std::abs(placed - load.packets_required);
			if (load.contiguous && runs > 1) violation += runs - 1;
		}
	}

	CostBreakdown c;
	c.delay_cost = scn.weights.w_delay * (delay_sum / J);
	c.transaction_cost = net / J;
	c.degradation_cost = wear / J;
	c.penalty = scn.weights.w_penalty * (violation + band);
	c.objective = c.delay_cost + c.transaction_cost + c.degradation_cost + c.penalty;
	return c;
}

std::vector<std::vector<std::vector<int>>> nested_bits(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	std::vector<std::vector<std::vector<int>>> out(static_cast<std::size_t>(scn.num_homes()));
	for (const auto& load : scn.loads()) {
		const auto row = schedule.row(scn.flat_index(load.home, load.index));
		out[static_cast<std::size_t>(load.home)].emplace_back(row.begin(), row.end());
	}
	return out;
}

std::filesystem::path temp_dir(const std::string& name) {
	const auto dir = std::filesystem::temp_directory_path() / ("les_test_" + name);
	std::filesystem::remove_all(dir);
	std::filesystem::create_directories(dir);
	return dir;
}

std::string slurp(const std::filesystem::path& path) {
	std::ifstream in(path, std::ios::binary);
	std::ostringstream buf;
	buf << in.rdbuf();
	return buf.str();
}

}  // namespace les::test
