#include "les/mas.hpp"

#include <algorithm>
#include <string>

namespace les {

std::string_view to_string(AgentKind kind) {
	switch (kind) {
		case AgentKind::sra_load: return "SRA_load";
		case AgentKind::sra_pv: return "SRA_pv";
		case AgentKind::mra_ess: return "MRA_ess";
		case AgentKind::mra_esp: return "MRA_esp";
		case AgentKind::ua: return "UA";
	}
	return "unknown";
}

std::string to_string(const AgentId& id) {
	std::string out(to_string(id.kind));
	if (id.home) out += ":" + std::to_string(*id.home);
	if (id.load) out += ":" + std::to_string(*id.load);
	return out;
}

namespace {

std::vector<AgentId> slave_agents(const ValidatedScenario& scn) {
	std::vector<AgentId> ids;
	for (const auto& load : scn.loads()) ids.push_back(AgentId::load_agent(load.home, load.index));
	for (int b = 0; b < scn.num_homes(); ++b) ids.push_back(AgentId::pv_agent(b));
	ids.push_back(AgentId::ess_agent());
	ids.push_back(AgentId::esp_agent());
	std::sort(ids.begin(), ids.end());
	return ids;
}

template <typename T>
std::vector<T> tail(std::span<const T> series, int from) {
	return {series.begin() + from, series.end()};
}

}  // namespace

AgentSystem::AgentSystem(const ValidatedScenario& scn)
    : scn_(&scn), ids_(slave_agents(scn)), realized_(ScheduleMatrix::for_scenario(scn)) {
	for (std::size_t i = 0; i < scn.load_count(); ++i) loads_.push_back({i, {}});
	for (const auto& home : scn->homes) ess_.push_back({home.ess.initial_level, false, false});
	traces_.resize(static_cast<std::size_t>(scn.num_homes()));
}

std::vector<StatusReport> AgentSystem::collect_status(std::span<const AgentId> agents, int slot) const {
	if (slot < 0 || slot >= scn_->horizon()) {
		throw LesError("status requested for slot " + std::to_string(slot) + " outside the horizon");
	}
	std::vector<AgentId> wanted(agents.begin(), agents.end());
	std::sort(wanted.begin(), wanted.end());

	std::vector<StatusReport> reports;
	reports.reserve(wanted.size());
	for (const auto& id : wanted) {
		if (!std::binary_search(ids_.begin(), ids_.end(), id)) {
			throw LesError("agent " + to_string(id) + " is not registered");
		}
		StatusReport report{id, slot, LoadStatus{}};
		switch (id.kind) {
			case AgentKind::sra_load: {
				const std::size_t flat = scn_->flat_index(*id.home, *id.load);
				const FlatLoad& load = scn_->loads()[flat];
				LoadStatus status;
				status.window = load.window;
				const auto row = realized_.row(flat);
				for (int t = 0; t < slot; ++t) {
					if (row[static_cast<std::size_t>(t)] != 0) status.delivered.push_back(t);
				}
				status.packets_pending = load.spec.packets_required - static_cast<int>(status.delivered.size());
				report.payload = std::move(status);
				break;
			}
			case AgentKind::sra_pv:
				report.payload = PvStatus{tail(scn_->pv_series(*id.home), slot)};
				break;
			case AgentKind::mra_ess:
				report.payload = EssStatus{ess_levels()};
				break;
			case AgentKind::mra_esp:
				report.payload = EspStatus{scn_->tariff_slot(slot)};
				break;
			case AgentKind::ua:
				throw LesError("the utility agent does not report status");
		}
		reports.push_back(std::move(report));
	}
	return reports;
}

void AgentSystem::deliver(const ActionPlan& plan) {
	if (!std::binary_search(ids_.begin(), ids_.end(), plan.agent)) {
		throw LesError("plan addressed to unregistered agent " + to_string(plan.agent));
	}
	if (plan.agent.kind != AgentKind::sra_load) return;
	const std::size_t flat = scn_->flat_index(*plan.agent.home, *plan.agent.load);
	const auto& body = std::get<LoadPlan>(plan.body);
	auto& planned = loads_[flat].planned;
	std::erase_if(planned, [&](int t) { return t >= plan.first_slot; });
	planned.insert(planned.end(), body.slots.begin(), body.slots.end());
}

std::vector<SlotDispatch> AgentSystem::execute(int slot) {
	const auto t = static_cast<std::size_t>(slot);
	std::vector<double> demand(static_cast<std::size_t>(scn_->num_homes()), 0.0);
	for (const auto& agent : loads_) {
		if (std::find(agent.planned.begin(), agent.planned.end(), slot) == agent.planned.end()) continue;
		const FlatLoad& load = scn_->loads()[agent.flat];
		realized_.set(agent.flat, slot);
		demand[static_cast<std::size_t>(load.home)] += load.spec.packet_energy;
	}
	std::vector<SlotDispatch> out;
	const SlotContext ctx{scn_->tariff_slot(slot), scn_->lowest_tier(slot), (*scn_)->tariff.swap_transaction_prices};
	for (int b = 0; b < scn_->num_homes(); ++b) {
		const auto h = static_cast<std::size_t>(b);
		const auto outcome = dispatch_slot(demand[h], scn_->pv_series(b)[t], ess_[h], (*scn_)->homes[h].ess, ctx,
		                                   (*scn_)->weights);
		ess_[h] = outcome.next;
		traces_[h].slots.push_back(outcome.dispatch);
		traces_[h].ess.push_back(outcome.next);
		out.push_back(outcome.dispatch);
	}
	return out;
}

std::vector<double> AgentSystem::ess_levels() const {
	std::vector<double> levels;
	for (const auto& s : ess_) levels.push_back(s.level);
	return levels;
}

std::vector<ActionPlan> slice_plans(std::span<const AgentId> agents, const ScheduleMatrix& plan,
                                    const Evaluation& planned, const ValidatedScenario& scn, int slot) {
	std::vector<ActionPlan> plans;
	plans.reserve(agents.size());
	const int horizon = scn.horizon();
	for (const auto& id : agents) {
		ActionPlan p{id, slot, LoadPlan{}};
		switch (id.kind) {
			case AgentKind::sra_load: {
				LoadPlan body;
				const auto row = plan.row(scn.flat_index(*id.home, *id.load));
				for (int t = slot; t < horizon; ++t) {
					if (row[static_cast<std::size_t>(t)] != 0) body.slots.push_back(t);
				}
				p.body = std::move(body);
				break;
			}
			case AgentKind::sra_pv: {
				PvPlan body;
				for (int t = slot; t < horizon; ++t) {
					const auto& d = planned.homes[static_cast<std::size_t>(*id.home)].slots[static_cast<std::size_t>(t)];
					body.to_loads.push_back(d.pv_to_loads);
					body.to_ess.push_back(d.pv_to_ess);
					body.exported.push_back(d.grid_sell_energy);
				}
				p.body = std::move(body);
				break;
			}
			case AgentKind::mra_ess: {
				EssPlan body;
				for (int b = 0; b < scn.num_homes(); ++b) {
					for (int t = slot; t < horizon; ++t) {
						const auto& d = planned.homes[static_cast<std::size_t>(b)].slots[static_cast<std::size_t>(t)];
						body.commands.push_back({b, t, d.pv_to_ess + d.grid_to_ess, d.ess_discharge});
					}
				}
				p.body = std::move(body);
				break;
			}
			case AgentKind::mra_esp: {
				EspPlan body;
				for (int t = slot; t < horizon; ++t) {
					double buy = 0.0;
					double sell = 0.0;
					for (const auto& home : planned.homes) {
						const auto& d = home.slots[static_cast<std::size_t>(t)];
						buy += d.grid_buy_energy + d.grid_to_ess;
						sell += d.grid_sell_energy;
					}
					body.buy_kwh.push_back(buy);
					body.sell_kwh.push_back(sell);
				}
				p.body = std::move(body);
				break;
			}
			case AgentKind::ua:
				throw LesError("the utility agent does not receive plans");
		}
		plans.push_back(std::move(p));
	}
	return plans;
}

std::vector<ActionPlan> master_plan(std::span<const StatusReport> reports, const ValidatedScenario& scn,
                                    const EpisodeConfig& cfg, OptimizationResult* result,
                                    const ScheduleMatrix* realized) {
	const auto expected = slave_agents(scn);
	std::vector<AgentId> seen;
	for (const auto& r : reports) seen.push_back(r.agent);
	std::sort(seen.begin(), seen.end());
	if (seen != expected) throw LesError("planning round needs exactly one report per registered agent");
	const int slot = reports.front().slot;
	for (const auto& r : reports) {
		if (r.slot != slot) throw LesError("reports from different slots in one planning round");
	}

	OptimizationResult best;
	if (slot == 0 || realized == nullptr) {
		best = run(cfg.algo, scn, cfg.optimizer);
	} else {
		const FrozenPrefix frozen{slot, *realized};
		best = run(cfg.algo, scn, cfg.optimizer, &frozen);
	}
	const Evaluation planned = evaluate_detailed(best.best, scn);
	auto plans = slice_plans(expected, best.best, planned, scn, slot);
	if (result) *result = std::move(best);
	return plans;
}

EpisodeLog run_episode(const ValidatedScenario& scn, const EpisodeConfig& cfg) {
	AgentSystem system(scn);
	std::deque<Message> queue;
	EpisodeLog log;
	const AgentId master = AgentId::utility_agent();

	ScheduleMatrix plan;
	Evaluation planned;
	for (int slot = 0; slot < scn.horizon(); ++slot) {
		SlotRecord record;
		record.slot = slot;
		for (auto& report : system.collect_status(slot)) queue.push_back({report.agent, master, std::move(report)});

		std::vector<StatusReport> inbox;
		while (!queue.empty() && queue.front().to == master) {
			inbox.push_back(std::get<StatusReport>(std::move(queue.front().body)));
			queue.pop_front();
			++log.messages;
		}

		std::vector<ActionPlan> plans;
		if (slot == 0 || cfg.replan_every_slot) {
			EpisodeConfig round = cfg;
			if (slot > 0) round.optimizer.seed = derive_seed(cfg.optimizer.seed, static_cast<std::uint64_t>(slot));
			OptimizationResult candidate;
			plans = master_plan(inbox, scn, round, &candidate, slot > 0 ? &system.realized() : nullptr);
			if (slot == 0 || candidate.best_costs.objective < log.plan.best_costs.objective) {
				plan = candidate.best;
				planned = evaluate_detailed(plan, scn);
				log.plan = std::move(candidate);
			} else {
				plans = slice_plans(system.agents(), plan, planned, scn, slot);
			}
		} else {
			plans = slice_plans(system.agents(), plan, planned, scn, slot);
		}

		for (const auto& p : plans) queue.push_back({master, p.agent, p});
		while (!queue.empty()) {
			system.deliver(std::get<ActionPlan>(queue.front().body));
			queue.pop_front();
			++log.messages;
		}

		record.dispatch = system.execute(slot);
		record.ess_level = system.ess_levels();
		record.reports = std::move(inbox);
		record.plans = std::move(plans);
		log.slots.push_back(std::move(record));
	}

	log.realized = system.realized();
	log.homes.assign(system.traces().begin(), system.traces().end());
	log.costs = summarize(log.homes, log.realized, scn);
	if (log.costs != evaluate(log.realized, scn)) {
		throw LesError("episode costs diverged from direct evaluation of the realized schedule");
	}
	return log;
}

}  // namespace les
