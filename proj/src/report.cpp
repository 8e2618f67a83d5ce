#include "les/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace les {

using nlohmann::json;

std::string format_double(double value) {
	char buf[64];
	const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
	if (ec != std::errc{}) throw std::runtime_error("cannot format double");
	return std::string(buf, end);
}

std::string format_fixed(double value, int decimals) {
	char buf[128];
	const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
	if (ec != std::errc{}) throw std::runtime_error("cannot format double");
	std::string out(buf, end);
	// "-0.0000" reads back as zero; print it as such.
	if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
	return out;
}

void write_costs_csv(std::ostream& out, std::span<const CostRow> rows) {
	out << kCostsHeader << '\n';
	for (const auto& row : rows) {
		const auto& c = row.costs;
		out << row.algo << ',' << row.seed << ',' << format_fixed(c.delay_cost, 4) << ','
		    << format_fixed(c.transaction_cost, 4) << ',' << format_fixed(c.degradation_cost, 4) << ','
		    << format_fixed(c.penalty, 4) << ',' << format_fixed(c.objective, 4) << '\n';
	}
}

void write_trace_csv(std::ostream& out, std::span<const double> trace) {
	out << kTraceHeader << '\n';
	for (std::size_t i = 0; i < trace.size(); ++i) out << i << ',' << format_double(trace[i]) << '\n';
}

json schedule_to_json(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	json homes = json::array();
	for (int b = 0; b < scn.num_homes(); ++b) {
		json loads = json::array();
		const auto [begin, end] = scn.home_loads(b);
		for (std::size_t i = begin; i < end; ++i) {
			json row = json::array();
			for (auto bit : schedule.row(i)) row.push_back(static_cast<int>(bit));
			loads.push_back(std::move(row));
		}
		homes.push_back(std::move(loads));
	}
	return homes;
}

json costs_to_json(const CostBreakdown& c) {
	return {{"delay_cost", c.delay_cost},
	        {"transaction_cost", c.transaction_cost},
	        {"degradation_cost", c.degradation_cost},
	        {"penalty", c.penalty},
	        {"objective", c.objective}};
}

json result_to_json(const OptimizationResult& result, const ValidatedScenario& scn) {
	return {{"algo", std::string(to_string(result.algo))},
	        {"seed", result.seed},
	        {"costs", costs_to_json(result.best_costs)},
	        {"trace", result.trace},
	        {"evaluations", result.evaluations},
	        {"schedule", schedule_to_json(result.best, scn)}};
}

namespace {

json agent_to_json(const AgentId& id) {
	json j{{"kind", std::string(to_string(id.kind))}};
	if (id.home) j["home"] = *id.home;
	if (id.load) j["load"] = *id.load;
	return j;
}

}  // namespace

json report_to_json(const StatusReport& report) {
	json payload = std::visit(
	    [](const auto& p) -> json {
		    using T = std::decay_t<decltype(p)>;
		    if constexpr (std::is_same_v<T, LoadStatus>) {
			    return {{"packets_pending", p.packets_pending},
			            {"window", {p.window.first, p.window.last}},
			            {"delivered", p.delivered}};
		    } else if constexpr (std::is_same_v<T, PvStatus>) {
			    return {{"forecast", p.forecast}};
		    } else if constexpr (std::is_same_v<T, EssStatus>) {
			    return {{"levels", p.levels}};
		    } else {
			    return {{"grid_buy", p.tariff.grid_buy}, {"grid_sell", p.tariff.grid_sell}};
		    }
	    },
	    report.payload);
	return {{"agent", agent_to_json(report.agent)}, {"slot", report.slot}, {"payload", std::move(payload)}};
}

json plan_to_json(const ActionPlan& plan) {
	json body = std::visit(
	    [](const auto& p) -> json {
		    using T = std::decay_t<decltype(p)>;
		    if constexpr (std::is_same_v<T, LoadPlan>) {
			    return {{"slots", p.slots}};
		    } else if constexpr (std::is_same_v<T, PvPlan>) {
			    return {{"to_loads", p.to_loads}, {"to_ess", p.to_ess}, {"exported", p.exported}};
		    } else if constexpr (std::is_same_v<T, EssPlan>) {
			    json commands = json::array();
			    for (const auto& c : p.commands) {
				    commands.push_back({{"home", c.home}, {"slot", c.slot}, {"charge", c.charge}, {"discharge", c.discharge}});
			    }
			    return {{"commands", std::move(commands)}};
		    } else {
			    return {{"buy_kwh", p.buy_kwh}, {"sell_kwh", p.sell_kwh}};
		    }
	    },
	    plan.body);
	return {{"agent", agent_to_json(plan.agent)}, {"first_slot", plan.first_slot}, {"body", std::move(body)}};
}

json dispatch_to_json(const SlotDispatch& d) {
	return {{"demand", d.demand},
	        {"pv", d.pv},
	        {"pv_to_loads", d.pv_to_loads},
	        {"pv_to_ess", d.pv_to_ess},
	        {"ess_discharge", d.ess_discharge},
	        {"grid_buy_energy", d.grid_buy_energy},
	        {"grid_to_ess", d.grid_to_ess},
	        {"grid_sell_energy", d.grid_sell_energy},
	        {"pv_curtailed", d.pv_curtailed},
	        {"ratio", std::isinf(d.quote.ratio) ? json("inf") : json(d.quote.ratio)},
	        {"internal_buy", d.quote.internal_buy},
	        {"internal_sell", d.quote.internal_sell}};
}

void write_episode_jsonl(std::ostream& out, const EpisodeLog& log) {
	for (const auto& record : log.slots) {
		json reports = json::array();
		for (const auto& r : record.reports) reports.push_back(report_to_json(r));
		json plans = json::array();
		for (const auto& p : record.plans) plans.push_back(plan_to_json(p));
		json dispatch = json::array();
		json slot_costs = json::array();
		for (std::size_t b = 0; b < record.dispatch.size(); ++b) {
			const auto& d = record.dispatch[b];
			dispatch.push_back(dispatch_to_json(d));
			slot_costs.push_back({{"home", b},
			                      {"buy_cost", d.buy_cost},
			                      {"sell_revenue", d.sell_revenue},
			                      {"degradation", d.degradation}});
		}
		json line{{"slot", record.slot},
		          {"reports", std::move(reports)},
		          {"plans", std::move(plans)},
		          {"dispatch", std::move(dispatch)},
		          {"ess_level", record.ess_level},
		          {"slot_costs", std::move(slot_costs)}};
		out << line.dump() << '\n';
	}
}

namespace {

// Shifted mean: exact for constant samples.
double mean_of(const std::vector<double>& xs) {
	double shift = 0.0;
	for (double x : xs) shift += x - xs.front();
	return xs.front() + shift / static_cast<double>(xs.size());
}

double std_of(const std::vector<double>& xs, double mean) {
	double sq = 0.0;
	for (double x : xs) sq += (x - mean) * (x - mean);
	return std::sqrt(sq / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<SummaryRow> summarize_sweep(std::span<const SweepCell> cells) {
	std::vector<std::string> order;
	for (const auto& c : cells) {
		if (std::find(order.begin(), order.end(), c.algo) == order.end()) order.push_back(c.algo);
	}
	std::vector<SummaryRow> rows;
	for (const auto& algo : order) {
		std::vector<double> buy, sell, bill, objective;
		for (const auto& c : cells) {
			if (c.algo != algo) continue;
			buy.push_back(c.bought_kwh);
			sell.push_back(c.sold_kwh);
			bill.push_back(c.costs.transaction_cost / 100.0);
			objective.push_back(c.costs.objective);
		}
		SummaryRow row;
		row.algo = algo;
		row.mean_buy_kwh = mean_of(buy);
		row.mean_sell_kwh = mean_of(sell);
		row.daily_bill_usd = mean_of(bill);
		row.monthly_bill_usd = kDaysPerMonth * row.daily_bill_usd;
		row.mean_objective = mean_of(objective);
		row.std_objective = std_of(objective, row.mean_objective);
		rows.push_back(row);
	}
	return rows;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
	out << kSummaryHeader << '\n';
	for (const auto& r : rows) {
		out << r.algo << ',' << format_double(r.mean_buy_kwh) << ',' << format_double(r.mean_sell_kwh) << ','
		    << format_double(r.daily_bill_usd) << ',' << format_double(r.monthly_bill_usd) << ','
		    << format_double(r.mean_objective) << ',' << format_double(r.std_objective) << '\n';
	}
}

}  // namespace les
