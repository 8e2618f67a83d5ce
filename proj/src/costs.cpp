#include "les/costs.hpp"

#include <algorithm>

namespace les {

DispatchOutcome dispatch_slot(double demand, double pv, const EssState& state, const EssSpec& spec,
                              const SlotContext& ctx, const ObjectiveWeights& weights) {
	SlotDispatch d;
	d.demand = demand;
	d.pv = pv;

	const double can_discharge = discharge_headroom(state, spec);
	const double can_charge = charge_headroom(state, spec);
	d.quote = quote_prices(ctx.tariff, pv + can_discharge, demand);

	d.pv_to_loads = std::min(demand, pv);
	const double residual = pv - d.pv_to_loads;
	const double deficit = demand - d.pv_to_loads;

	d.pv_to_ess = std::min(residual, can_charge);
	const double surplus = residual - d.pv_to_ess;
	d.grid_sell_energy = std::min(surplus, weights.export_cap);
	d.pv_curtailed = surplus - d.grid_sell_energy;

	d.ess_discharge = std::min(deficit, can_discharge);
	d.grid_buy_energy = deficit - d.ess_discharge;

	if (spec.grid_charging && ctx.lowest_tier && d.ess_discharge == 0.0) {
		d.grid_to_ess = std::max(0.0, can_charge - d.pv_to_ess);
	}

	const EssState next = step_ess(state, d.pv_to_ess + d.grid_to_ess, d.ess_discharge, spec);

	// Deficit energy is priced at the internal sell price and surplus at the
	// internal buy price unless the scenario swaps them.
	const double deficit_price = ctx.swap_transaction_prices ? d.quote.internal_buy : d.quote.internal_sell;
	const double surplus_price = ctx.swap_transaction_prices ? d.quote.internal_sell : d.quote.internal_buy;
	d.buy_cost = d.grid_buy_energy * deficit_price + d.grid_to_ess * ctx.tariff.grid_buy;
	d.sell_revenue = d.grid_sell_energy * surplus_price;
	d.degradation = slot_degradation(next, spec);
	return {d, next};
}

double transaction_cost(std::span<const HomeTrace> homes, int prosumers) {
	double net = 0.0;
	for (const auto& home : homes) {
		for (const auto& slot : home.slots) net += slot.buy_cost - slot.sell_revenue;
	}
	return net / prosumers;
}

double delay_cost(double average_delay, const ObjectiveWeights& weights) { return weights.w_delay * average_delay; }

std::vector<double> home_demand(const ScheduleMatrix& schedule, const ValidatedScenario& scn, int home) {
	std::vector<double> demand(static_cast<std::size_t>(scn.horizon()), 0.0);
	const auto [begin, end] = scn.home_loads(home);
	const auto loads = scn.loads();
	for (std::size_t i = begin; i < end; ++i) {
		const auto row = schedule.row(i);
		for (std::size_t t = 0; t < row.size(); ++t) {
			if (row[t] != 0) demand[t] += loads[i].spec.packet_energy;
		}
	}
	return demand;
}

HomeTrace simulate_home(std::span<const double> demand, const ValidatedScenario& scn, int home) {
	const EssSpec& ess = scn->homes[static_cast<std::size_t>(home)].ess;
	const auto pv = scn.pv_series(home);
	HomeTrace trace;
	trace.slots.reserve(demand.size());
	trace.ess.reserve(demand.size());
	EssState state{ess.initial_level, false, false};
	for (int t = 0; t < scn.horizon(); ++t) {
		const SlotContext ctx{scn.tariff_slot(t), scn.lowest_tier(t), scn->tariff.swap_transaction_prices};
		const auto outcome = dispatch_slot(demand[static_cast<std::size_t>(t)], pv[static_cast<std::size_t>(t)],
		                                   state, ess, ctx, scn->weights);
		trace.slots.push_back(outcome.dispatch);
		trace.ess.push_back(outcome.next);
		state = outcome.next;
	}
	return trace;
}

namespace {

// Internal prices must stay within [0, max grid buy price].
double price_band_violation(std::span<const HomeTrace> homes, const ValidatedScenario& scn) {
	const auto& buy = scn->tariff.grid_buy;
	const double cap = *std::max_element(buy.begin(), buy.end());
	double excess = 0.0;
	for (const auto& home : homes) {
		for (const auto& slot : home.slots) {
			for (double price : {slot.quote.internal_buy, slot.quote.internal_sell}) {
				excess += std::max(0.0, price - cap) + std::max(0.0, -price);
			}
		}
	}
	return excess;
}

}  // namespace

CostBreakdown summarize(std::span<const HomeTrace> homes, const ScheduleMatrix& schedule,
                        const ValidatedScenario& scn) {
	CostBreakdown c;
	c.delay_cost = delay_cost(average_delay(schedule, scn), scn->weights);
	c.transaction_cost = transaction_cost(homes, scn.prosumers());
	double degradation = 0.0;
	for (const auto& home : homes) {
		for (const auto& slot : home.slots) degradation += slot.degradation;
	}
	c.degradation_cost = degradation / scn.prosumers();
	c.penalty = scn->weights.w_penalty * (schedule_violation(schedule, scn) + price_band_violation(homes, scn));
	c.objective = c.delay_cost + c.transaction_cost + c.degradation_cost + c.penalty;
	return c;
}

Evaluation evaluate_detailed(const ScheduleMatrix& candidate, const ValidatedScenario& scn) {
	if (!candidate.matches(scn)) throw DimensionMismatch("candidate does not match scenario dimensions");
	Evaluation e;
	e.homes.reserve(static_cast<std::size_t>(scn.num_homes()));
	double bought = 0.0;
	double sold = 0.0;
	for (int b = 0; b < scn.num_homes(); ++b) {
		const auto demand = home_demand(candidate, scn, b);
		e.homes.push_back(simulate_home(demand, scn, b));
		for (const auto& slot : e.homes.back().slots) {
			bought += slot.grid_buy_energy + slot.grid_to_ess;
			sold += slot.grid_sell_energy;
		}
	}
	e.costs = summarize(e.homes, candidate, scn);
	e.bought_kwh = bought / scn.prosumers();
	e.sold_kwh = sold / scn.prosumers();
	return e;
}

CostBreakdown evaluate(const ScheduleMatrix& candidate, const ValidatedScenario& scn) {
	return evaluate_detailed(candidate, scn).costs;
}

}  // namespace les
