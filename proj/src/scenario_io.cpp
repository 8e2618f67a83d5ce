#include "les/scenario_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace les {

using nlohmann::json;

namespace {

// Collects every structural problem of a document instead of stopping at the first.
class Reader {
public:
	template <typename T>
	bool read(const json& obj, const char* key, T& out, const std::string& path, bool required) {
		const std::string name = path.empty() ? std::string(key) : path + "." + key;
		if (!obj.is_object() || !obj.contains(key)) {
			if (required) errors.push_back("missing key '" + name + "'");
			return false;
		}
		try {
			out = obj.at(key).get<T>();
			return true;
		} catch (const json::exception&) {
			errors.push_back("field '" + name + "' has the wrong type");
			return false;
		}
	}

	const json* object(const json& obj, const char* key, const std::string& path, bool required) {
		const std::string name = path.empty() ? std::string(key) : path + "." + key;
		if (!obj.is_object() || !obj.contains(key)) {
			if (required) errors.push_back("missing key '" + name + "'");
			return nullptr;
		}
		if (!obj.at(key).is_object()) {
			errors.push_back("field '" + name + "' must be an object");
			return nullptr;
		}
		return &obj.at(key);
	}

	std::vector<std::string> errors;
};

void read_pv(Reader& r, const json& j, PvSpec& pv, const std::string& path, bool required) {
	r.read(j, "efficiency", pv.efficiency, path, required);
	r.read(j, "area", pv.area, path, required);
	r.read(j, "max_output", pv.max_output, path, required);
}

void read_ess(Reader& r, const json& j, EssSpec& ess, const std::string& path, bool required) {
	r.read(j, "capacity", ess.capacity, path, required);
	r.read(j, "decay", ess.decay, path, required);
	r.read(j, "charge_eff", ess.charge_eff, path, required);
	r.read(j, "discharge_eff", ess.discharge_eff, path, required);
	const bool has_floor = r.read(j, "floor", ess.floor, path, false);
	r.read(j, "max_charge_rate", ess.max_charge_rate, path, false);
	r.read(j, "max_discharge_rate", ess.max_discharge_rate, path, false);
	r.read(j, "kappa_charge", ess.kappa_charge, path, false);
	r.read(j, "kappa_discharge", ess.kappa_discharge, path, false);
	r.read(j, "grid_charging", ess.grid_charging, path, false);
	if (!r.read(j, "initial_level", ess.initial_level, path, false) && (required || has_floor)) {
		ess.initial_level = ess.floor;
	}
}

LoadSpec read_load(Reader& r, const json& j, const std::string& path, double quantum, std::size_t index) {
	LoadSpec load;
	load.name = "load" + std::to_string(index);
	load.packet_energy = quantum;
	r.read(j, "name", load.name, path, false);
	r.read(j, "packets_required", load.packets_required, path, true);
	r.read(j, "packet_energy", load.packet_energy, path, false);
	r.read(j, "request_slot", load.request_slot, path, true);
	r.read(j, "latest_start", load.latest_start, path, true);
	if (!r.read(j, "max_delay", load.max_delay, path, false)) load.max_delay = load.latest_start - load.request_slot;
	r.read(j, "contiguous", load.contiguous, path, false);
	return load;
}

void read_optimizer(Reader& r, const json& j, AlgoConfig& cfg) {
	const std::string path = "optimizer";
	r.read(j, "population", cfg.population, path, false);
	r.read(j, "iterations", cfg.iterations, path, false);
	r.read(j, "cognitive", cfg.cognitive, path, false);
	r.read(j, "social", cfg.social, path, false);
	r.read(j, "crossover_velocity", cfg.crossover_velocity, path, false);
	r.read(j, "p_crossover", cfg.p_crossover, path, false);
	r.read(j, "v_max", cfg.v_max, path, false);
	r.read(j, "ga_crossover_rate", cfg.ga_crossover_rate, path, false);
	r.read(j, "ga_mutation_rate", cfg.ga_mutation_rate, path, false);
	r.read(j, "stagnation_limit", cfg.stagnation_limit, path, false);
	r.read(j, "seed", cfg.seed, path, false);
}

}  // namespace

LoadedScenario parse_scenario(const json& doc) {
	if (!doc.is_object()) throw ScenarioError({"scenario document must be a JSON object"});
	Reader r;
	LoadedScenario out;
	Scenario& s = out.scenario;

	r.read(doc, "horizon", s.horizon, "", true);
	r.read(doc, "packet_quantum", s.packet_quantum, "", true);
	r.read(doc, "seed_default", s.seed_default, "", true);
	r.read(doc, "slot_duration", s.slot_duration, "", false);
	r.read(doc, "num_prosumers", s.num_prosumers, "", false);

	PvSpec pv;
	if (const json* j = r.object(doc, "pv", "", true)) read_pv(r, *j, pv, "pv", true);
	EssSpec ess;
	if (const json* j = r.object(doc, "ess", "", true)) read_ess(r, *j, ess, "ess", true);

	if (const json* j = r.object(doc, "tariff", "", true)) {
		r.read(*j, "grid_buy", s.tariff.grid_buy, "tariff", true);
		r.read(*j, "grid_sell", s.tariff.grid_sell, "tariff", true);
		r.read(*j, "swap_transaction_prices", s.tariff.swap_transaction_prices, "tariff", false);
	}
	if (const json* j = r.object(doc, "weather", "", true)) {
		r.read(*j, "irradiance", s.weather.irradiance, "weather", true);
		r.read(*j, "outdoor_temp", s.weather.outdoor_temp, "weather", true);
	}
	s.weights.export_cap = 2.0 * s.packet_quantum;
	if (const json* j = r.object(doc, "weights", "", true)) {
		r.read(*j, "w_delay", s.weights.w_delay, "weights", false);
		r.read(*j, "w_penalty", s.weights.w_penalty, "weights", false);
		r.read(*j, "export_cap", s.weights.export_cap, "weights", false);
	}

	if (!doc.contains("homes")) {
		r.errors.push_back("missing key 'homes'");
	} else if (!doc.at("homes").is_array()) {
		r.errors.push_back("field 'homes' must be an array");
	} else {
		const json& homes = doc.at("homes");
		for (std::size_t b = 0; b < homes.size(); ++b) {
			const std::string path = "homes[" + std::to_string(b) + "]";
			HomeProfile home;
			home.pv = pv;
			home.ess = ess;
			const json& h = homes[b];
			if (const json* j = r.object(h, "pv", path, false)) read_pv(r, *j, home.pv, path + ".pv", false);
			if (const json* j = r.object(h, "ess", path, false)) read_ess(r, *j, home.ess, path + ".ess", false);
			if (!h.is_object() || !h.contains("loads") || !h.at("loads").is_array()) {
				r.errors.push_back("missing key '" + path + ".loads' (array)");
			} else {
				const json& loads = h.at("loads");
				for (std::size_t l = 0; l < loads.size(); ++l) {
					home.loads.push_back(
					    read_load(r, loads[l], path + ".loads[" + std::to_string(l) + "]", s.packet_quantum, l));
				}
			}
			s.homes.push_back(std::move(home));
		}
	}

	out.optimizer.seed = s.seed_default;
	if (const json* j = r.object(doc, "optimizer", "", false)) read_optimizer(r, *j, out.optimizer);

	if (!r.errors.empty()) throw ScenarioError(std::move(r.errors));
	return out;
}

LoadedScenario read_scenario_file(const std::filesystem::path& path) {
	std::ifstream in(path);
	if (!in) throw ScenarioIoError("cannot read scenario file '" + path.string() + "'");
	json doc;
	try {
		doc = json::parse(in);
	} catch (const json::parse_error& e) {
		throw ScenarioIoError("malformed JSON in '" + path.string() + "': " + e.what());
	}
	return parse_scenario(doc);
}

namespace {

json load_to_json(const LoadSpec& l) {
	return {{"name", l.name},
	        {"packets_required", l.packets_required},
	        {"packet_energy", l.packet_energy},
	        {"request_slot", l.request_slot},
	        {"latest_start", l.latest_start},
	        {"max_delay", l.max_delay},
	        {"contiguous", l.contiguous}};
}

json pv_to_json(const PvSpec& pv) {
	return {{"efficiency", pv.efficiency}, {"area", pv.area}, {"max_output", pv.max_output}};
}

json ess_to_json(const EssSpec& e) {
	return {{"capacity", e.capacity},
	        {"floor", e.floor},
	        {"decay", e.decay},
	        {"charge_eff", e.charge_eff},
	        {"discharge_eff", e.discharge_eff},
	        {"max_charge_rate", e.max_charge_rate},
	        {"max_discharge_rate", e.max_discharge_rate},
	        {"kappa_charge", e.kappa_charge},
	        {"kappa_discharge", e.kappa_discharge},
	        {"initial_level", e.initial_level},
	        {"grid_charging", e.grid_charging}};
}

}  // namespace

json scenario_to_json(const Scenario& scn, const AlgoConfig& optimizer) {
	json doc;
	doc["horizon"] = scn.horizon;
	doc["slot_duration"] = scn.slot_duration;
	doc["packet_quantum"] = scn.packet_quantum;
	if (scn.num_prosumers > 0) doc["num_prosumers"] = scn.num_prosumers;
	doc["seed_default"] = scn.seed_default;
	const PvSpec pv = scn.homes.empty() ? PvSpec{} : scn.homes.front().pv;
	const EssSpec ess = scn.homes.empty() ? EssSpec{} : scn.homes.front().ess;
	doc["pv"] = pv_to_json(pv);
	doc["ess"] = ess_to_json(ess);
	doc["tariff"] = {{"grid_buy", scn.tariff.grid_buy},
	                 {"grid_sell", scn.tariff.grid_sell},
	                 {"swap_transaction_prices", scn.tariff.swap_transaction_prices}};
	doc["weather"] = {{"irradiance", scn.weather.irradiance}, {"outdoor_temp", scn.weather.outdoor_temp}};
	doc["weights"] = {{"w_delay", scn.weights.w_delay},
	                  {"w_penalty", scn.weights.w_penalty},
	                  {"export_cap", scn.weights.export_cap}};
	json homes = json::array();
	for (const auto& home : scn.homes) {
		json h;
		json loads = json::array();
		for (const auto& l : home.loads) loads.push_back(load_to_json(l));
		h["loads"] = std::move(loads);
		if (pv_to_json(home.pv) != doc["pv"]) h["pv"] = pv_to_json(home.pv);
		if (ess_to_json(home.ess) != doc["ess"]) h["ess"] = ess_to_json(home.ess);
		homes.push_back(std::move(h));
	}
	doc["homes"] = std::move(homes);
	doc["optimizer"] = {{"population", optimizer.population},
	                    {"iterations", optimizer.iterations},
	                    {"cognitive", optimizer.cognitive},
	                    {"social", optimizer.social},
	                    {"crossover_velocity", optimizer.crossover_velocity},
	                    {"p_crossover", optimizer.p_crossover},
	                    {"v_max", optimizer.v_max},
	                    {"ga_crossover_rate", optimizer.ga_crossover_rate},
	                    {"ga_mutation_rate", optimizer.ga_mutation_rate},
	                    {"stagnation_limit", optimizer.stagnation_limit},
	                    {"seed", optimizer.seed}};
	return doc;
}

}  // namespace les
