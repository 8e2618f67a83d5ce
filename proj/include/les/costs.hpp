#pragma once

#include <span>
#include <vector>

#include "les/core_model.hpp"
#include "les/pricing.hpp"
#include "les/scenario.hpp"
#include "les/storage.hpp"

namespace les {

// Realized energy flows of one home in one slot, all in kWh.
//
// Balance: demand == pv_to_loads + ess_discharge + grid_buy_energy
//          pv     == pv_to_loads + pv_to_ess + grid_sell_energy + pv_curtailed
struct SlotDispatch {
	double demand = 0.0;
	double pv = 0.0;
	double pv_to_loads = 0.0;
	double pv_to_ess = 0.0;
	double ess_discharge = 0.0;
	double grid_buy_energy = 0.0;   // deficit bought for loads
	double grid_to_ess = 0.0;       // cheap-tier grid charging
	double grid_sell_energy = 0.0;  // surplus sold, <= export cap
	double pv_curtailed = 0.0;      // surplus beyond battery and export cap
	PriceQuote quote;
	double buy_cost = 0.0;      // cents
	double sell_revenue = 0.0;  // cents
	double degradation = 0.0;   // cents
};

struct DispatchOutcome {
	SlotDispatch dispatch;
	EssState next;
};

struct SlotContext {
	TariffSlot tariff;
	bool lowest_tier = false;
	bool swap_transaction_prices = false;
};

/// Routes one slot's energy for a single home: PV to loads, leftover PV to the battery, deficit from the
/// battery then the grid, surplus beyond the battery sold up to the export cap. The price quote uses the
/// supply/demand ratio of (pv + discharge headroom) against demand before flows are fixed.
DispatchOutcome dispatch_slot(double demand, double pv, const EssState& state, const EssSpec& spec,
                              const SlotContext& ctx, const ObjectiveWeights& weights);

struct CostBreakdown {
	double delay_cost = 0.0;
	double transaction_cost = 0.0;  // buy minus sell, per prosumer
	double degradation_cost = 0.0;
	double penalty = 0.0;
	double objective = 0.0;

	friend bool operator==(const CostBreakdown&, const CostBreakdown&) = default;
};

// Per-home slot records of a simulated horizon.
struct HomeTrace {
	std::vector<SlotDispatch> slots;
	std::vector<EssState> ess;  // state after each slot
};

struct Evaluation {
	CostBreakdown costs;
	std::vector<HomeTrace> homes;
	double bought_kwh = 0.0;  // per prosumer
	double sold_kwh = 0.0;    // per prosumer
};

/// (1/J) * sum(buy cost - sell revenue) over all homes and slots, in cents.
double transaction_cost(std::span<const HomeTrace> homes, int prosumers);

/// w_delay * average delay.
double delay_cost(double average_delay, const ObjectiveWeights& weights);

/// Per-slot demand of one home under a schedule (kWh).
std::vector<double> home_demand(const ScheduleMatrix& schedule, const ValidatedScenario& scn, int home);

/// Simulates one home over the horizon from its initial battery level.
HomeTrace simulate_home(std::span<const double> demand, const ValidatedScenario& scn, int home);

/// Folds per-home traces and the schedule's delay/violation terms into a CostBreakdown.
/// The objective is the plain sum of the four components.
CostBreakdown summarize(std::span<const HomeTrace> homes, const ScheduleMatrix& schedule,
                        const ValidatedScenario& scn);

/// Full pipeline (demand -> dispatch -> pricing -> battery -> costs). Throws DimensionMismatch.
CostBreakdown evaluate(const ScheduleMatrix& candidate, const ValidatedScenario& scn);

/// Same as evaluate() but keeps every slot record.
Evaluation evaluate_detailed(const ScheduleMatrix& candidate, const ValidatedScenario& scn);

}  // namespace les
