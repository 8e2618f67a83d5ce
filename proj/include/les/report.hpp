#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "les/costs.hpp"
#include "les/mas.hpp"
#include "les/optimizer.hpp"

namespace les {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);
/// Fixed-point text with the given number of decimals.
std::string format_fixed(double value, int decimals);

struct CostRow {
	std::string algo;
	std::uint64_t seed = 0;
	CostBreakdown costs;
};

inline constexpr const char* kCostsHeader = "algo,seed,delay_cost,transaction_cost,degradation_cost,penalty,objective";
inline constexpr const char* kTraceHeader = "iteration,best_objective";
inline constexpr const char* kSummaryHeader =
    "algo,mean_buy_kwh,mean_sell_kwh,daily_bill_usd,monthly_bill_usd,mean_objective,std_objective";

void write_costs_csv(std::ostream& out, std::span<const CostRow> rows);
void write_trace_csv(std::ostream& out, std::span<const double> trace);

/// Schedule as homes -> loads -> slot bits.
nlohmann::json schedule_to_json(const ScheduleMatrix& schedule, const ValidatedScenario& scn);
nlohmann::json costs_to_json(const CostBreakdown& costs);
/// Best schedule, costs, trace, seed and algorithm. Wall time is left out so the document is reproducible.
nlohmann::json result_to_json(const OptimizationResult& result, const ValidatedScenario& scn);

nlohmann::json report_to_json(const StatusReport& report);
nlohmann::json plan_to_json(const ActionPlan& plan);
nlohmann::json dispatch_to_json(const SlotDispatch& dispatch);

/// One JSON object per slot: slot, reports, plans, dispatch, ess_level, slot_costs.
void write_episode_jsonl(std::ostream& out, const EpisodeLog& log);

struct SweepCell {
	std::string algo;
	std::uint64_t seed = 0;
	CostBreakdown costs;
	double bought_kwh = 0.0;  // per prosumer
	double sold_kwh = 0.0;
};

struct SummaryRow {
	std::string algo;
	double mean_buy_kwh = 0.0;
	double mean_sell_kwh = 0.0;
	double daily_bill_usd = 0.0;
	double monthly_bill_usd = 0.0;
	double mean_objective = 0.0;
	double std_objective = 0.0;
};

inline constexpr double kDaysPerMonth = 30.0;

/// Aggregates cells per algorithm, in first-appearance order. Bills are the mean transaction cost in
/// dollars; the standard deviation is the population one.
std::vector<SummaryRow> summarize_sweep(std::span<const SweepCell> cells);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace les
