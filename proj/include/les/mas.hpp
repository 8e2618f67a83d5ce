#pragma once

#include <compare>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "les/costs.hpp"
#include "les/optimizer.hpp"

namespace les {

// Hierarchical agent layer. Loads and PV are simple reflex agents, the battery
// fleet and the energy service provider are model-based agents, and the utility
// agent (energy router) is the master that plans for all of them.

enum class AgentKind { sra_load, sra_pv, mra_ess, mra_esp, ua };

std::string_view to_string(AgentKind kind);

struct AgentId {
	AgentKind kind = AgentKind::ua;
	std::optional<int> home;
	std::optional<int> load;

	static AgentId load_agent(int home, int load) { return {AgentKind::sra_load, home, load}; }
	static AgentId pv_agent(int home) { return {AgentKind::sra_pv, home, std::nullopt}; }
	static AgentId ess_agent() { return {AgentKind::mra_ess, std::nullopt, std::nullopt}; }
	static AgentId esp_agent() { return {AgentKind::mra_esp, std::nullopt, std::nullopt}; }
	static AgentId utility_agent() { return {AgentKind::ua, std::nullopt, std::nullopt}; }

	friend auto operator<=>(const AgentId&, const AgentId&) = default;
	friend bool operator==(const AgentId&, const AgentId&) = default;
};

std::string to_string(const AgentId& id);

struct LoadStatus {
	int packets_pending = 0;
	Window window;
	std::vector<int> delivered;  // slots already served
};

struct PvStatus {
	std::vector<double> forecast;  // kWh for the remaining slots
};

struct EssStatus {
	std::vector<double> levels;  // per home
};

struct EspStatus {
	TariffSlot tariff;
};

struct StatusReport {
	AgentId agent;
	int slot = 0;
	std::variant<LoadStatus, PvStatus, EssStatus, EspStatus> payload;
};

struct LoadPlan {
	std::vector<int> slots;  // packet slots from the plan's first slot on
};

struct PvPlan {
	std::vector<double> to_loads;
	std::vector<double> to_ess;
	std::vector<double> exported;
};

struct EssCommand {
	int home = 0;
	int slot = 0;
	double charge = 0.0;
	double discharge = 0.0;
};

struct EssPlan {
	std::vector<EssCommand> commands;
};

struct EspPlan {
	std::vector<double> buy_kwh;  // community totals per remaining slot
	std::vector<double> sell_kwh;
};

struct ActionPlan {
	AgentId agent;
	int first_slot = 0;
	std::variant<LoadPlan, PvPlan, EssPlan, EspPlan> body;
};

struct Message {
	AgentId from;
	AgentId to;
	std::variant<StatusReport, ActionPlan> body;
};

struct EpisodeConfig {
	Algorithm algo = Algorithm::crbpso;
	AlgoConfig optimizer;
	// Re-run the optimizer every slot with the past pinned; off means one day-ahead plan.
	bool replan_every_slot = false;
};

class LesError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Slave agents and their state. Single-threaded; handlers only mutate their own agent.
class AgentSystem {
public:
	explicit AgentSystem(const ValidatedScenario& scn);

	/// Registered slave agents in sorted order.
	std::span<const AgentId> agents() const { return ids_; }

	/// One report per requested agent, sorted by AgentId. Throws LesError for an unregistered agent
	/// or a slot outside the horizon.
	std::vector<StatusReport> collect_status(std::span<const AgentId> agents, int slot) const;
	std::vector<StatusReport> collect_status(int slot) const { return collect_status(ids_, slot); }

	/// Hands a plan to its agent.
	void deliver(const ActionPlan& plan);

	/// Executes one slot: loads switch on per their plans, PV and battery dispatch per home.
	std::vector<SlotDispatch> execute(int slot);

	const ScheduleMatrix& realized() const { return realized_; }
	std::span<const HomeTrace> traces() const { return traces_; }
	std::vector<double> ess_levels() const;

private:
	struct LoadAgent {
		std::size_t flat = 0;
		std::vector<int> planned;
	};

	const ValidatedScenario* scn_;
	std::vector<AgentId> ids_;
	std::vector<LoadAgent> loads_;
	std::vector<EssState> ess_;
	ScheduleMatrix realized_;
	std::vector<HomeTrace> traces_;
};

/// The utility agent's planning round: checks the report set is complete, optimizes (day-ahead at slot
/// 0, or with the past pinned when re-planning) and slices the best schedule and its dispatch into one
/// plan per reporting agent. `result` receives the optimizer output.
std::vector<ActionPlan> master_plan(std::span<const StatusReport> reports, const ValidatedScenario& scn,
                                    const EpisodeConfig& cfg, OptimizationResult* result = nullptr,
                                    const ScheduleMatrix* realized = nullptr);

/// Re-slices an existing plan from `slot` on without re-optimizing.
std::vector<ActionPlan> slice_plans(std::span<const AgentId> agents, const ScheduleMatrix& plan,
                                    const Evaluation& planned, const ValidatedScenario& scn, int slot);

struct SlotRecord {
	int slot = 0;
	std::vector<StatusReport> reports;
	std::vector<ActionPlan> plans;
	std::vector<SlotDispatch> dispatch;  // per home
	std::vector<double> ess_level;       // per home, after the slot
};

struct EpisodeLog {
	std::vector<SlotRecord> slots;
	ScheduleMatrix realized;
	CostBreakdown costs;
	std::vector<HomeTrace> homes;
	OptimizationResult plan;  // last planning round
	std::size_t messages = 0;
};

/// Runs the agents over the horizon. The final CostBreakdown is folded from the realized slot records
/// and equals evaluate() of the realized schedule.
EpisodeLog run_episode(const ValidatedScenario& scn, const EpisodeConfig& cfg);

}  // namespace les
