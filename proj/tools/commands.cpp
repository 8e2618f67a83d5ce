#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "les/mas.hpp"
#include "les/oracle.hpp"
#include "les/parallel.hpp"
#include "les/report.hpp"
#include "les/scenario_io.hpp"

namespace les::cli {

namespace {

// Maps library failures onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
	try {
		return body();
	} catch (const ScenarioIoError& e) {
		err << "error: " << e.what() << '\n';
		return kIoError;
	} catch (const std::filesystem::filesystem_error& e) {
		err << "error: " << e.what() << '\n';
		return kIoError;
	} catch (const ScenarioError& e) {
		for (const auto& v : e.violations()) err << "violation: " << v << '\n';
		return kDomainError;
	} catch (const std::exception& e) {
		err << "error: " << e.what() << '\n';
		return kDomainError;
	}
}

std::ofstream open_output(const std::filesystem::path& path) {
	std::ofstream out(path, std::ios::binary);
	if (!out) throw ScenarioIoError("cannot write '" + path.string() + "'");
	return out;
}

void apply_overrides(AlgoConfig& cfg, std::optional<int> population, std::optional<int> iterations) {
	if (population) cfg.population = *population;
	if (iterations) cfg.iterations = *iterations;
}

}  // namespace

int cmd_validate(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err) {
	return guarded(err, [&] {
		auto loaded = read_scenario_file(scenario);
		validate_scenario(std::move(loaded.scenario));
		validate_config(loaded.optimizer);
		out << "OK\n";
		return kOk;
	});
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
	return guarded(err, [&] {
		auto loaded = read_scenario_file(opts.scenario);
		const auto scn = validate_scenario(std::move(loaded.scenario));
		EpisodeConfig cfg;
		cfg.algo = parse_algorithm(opts.algo);
		cfg.optimizer = loaded.optimizer;
		cfg.optimizer.seed = opts.seed.value_or(scn->seed_default);
		cfg.replan_every_slot = opts.replan;
		apply_overrides(cfg.optimizer, opts.population, opts.iterations);

		const EpisodeLog log = run_episode(scn, cfg);

		std::filesystem::create_directories(opts.out_dir);
		{
			auto f = open_output(opts.out_dir / "episode.jsonl");
			write_episode_jsonl(f, log);
		}
		{
			auto f = open_output(opts.out_dir / "trace.csv");
			write_trace_csv(f, log.plan.trace);
		}
		{
			auto f = open_output(opts.out_dir / "costs.csv");
			const CostRow row{std::string(to_string(cfg.algo)), cfg.optimizer.seed, log.costs};
			write_costs_csv(f, std::span(&row, 1));
		}
		{
			auto f = open_output(opts.out_dir / "result.json");
			f << result_to_json(log.plan, scn).dump(1) << '\n';
		}
		const auto& c = log.costs;
		out << "algo=" << to_string(cfg.algo) << " seed=" << cfg.optimizer.seed
		    << " delay_cost=" << format_fixed(c.delay_cost, 4) << " transaction_cost=" << format_fixed(c.transaction_cost, 4)
		    << " degradation_cost=" << format_fixed(c.degradation_cost, 4) << " penalty=" << format_fixed(c.penalty, 4)
		    << " objective=" << format_fixed(c.objective, 4) << " iterations=" << (log.plan.trace.size() - 1)
		    << " wall_ms=" << format_fixed(log.plan.wall_time_ms, 1) << '\n';
		return kOk;
	});
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
	std::vector<std::uint64_t> seeds;
	if (text.find(',') == std::string::npos) {
		const auto count = std::stoull(text);
		for (std::uint64_t s = 1; s <= count; ++s) seeds.push_back(s);
		return seeds;
	}
	std::stringstream in(text);
	std::string item;
	while (std::getline(in, item, ',')) {
		if (!item.empty()) seeds.push_back(std::stoull(item));
	}
	return seeds;
}

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err) {
	return guarded(err, [&] {
		if (spec.algos.empty()) throw std::invalid_argument("sweep needs at least one algorithm");
		if (spec.seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
		auto loaded = read_scenario_file(spec.scenario);
		const auto scn = validate_scenario(std::move(loaded.scenario));
		std::vector<Algorithm> algos;
		for (const auto& name : spec.algos) algos.push_back(parse_algorithm(name));

		AlgoConfig base = loaded.optimizer;
		apply_overrides(base, spec.population, spec.iterations);
		base.threads = 1;
		validate_config(base);

		std::vector<SweepCell> cells(algos.size() * spec.seeds.size());
		parallel_for(cells.size(), configured_threads(), [&](std::size_t i) {
			const Algorithm algo = algos[i / spec.seeds.size()];
			AlgoConfig cfg = base;
			cfg.seed = spec.seeds[i % spec.seeds.size()];
			const auto result = run(algo, scn, cfg);
			const auto detail = evaluate_detailed(result.best, scn);
			cells[i] = {std::string(to_string(algo)), cfg.seed, detail.costs, detail.bought_kwh, detail.sold_kwh};
		});

		const auto rows = summarize_sweep(cells);
		std::filesystem::create_directories(spec.out_dir);
		{
			auto f = open_output(spec.out_dir / "summary.csv");
			write_summary_csv(f, rows);
		}
		{
			std::vector<CostRow> runs;
			for (const auto& c : cells) runs.push_back({c.algo, c.seed, c.costs});
			auto f = open_output(spec.out_dir / "runs.csv");
			write_costs_csv(f, runs);
		}
		write_summary_csv(out, rows);

		const auto find = [&](const std::string& algo) -> const SummaryRow* {
			for (const auto& r : rows) {
				if (r.algo == algo) return &r;
			}
			return nullptr;
		};
		if (const SummaryRow* cr = find("crbpso")) {
			auto f = open_output(spec.out_dir / "improvement.csv");
			f << "baseline,baseline_mean_objective,crbpso_mean_objective,relative_improvement\n";
			for (const auto& r : rows) {
				if (r.algo == "crbpso") continue;
				const double rel = (r.mean_objective - cr->mean_objective) / std::abs(r.mean_objective);
				f << r.algo << ',' << format_double(r.mean_objective) << ',' << format_double(cr->mean_objective) << ','
				  << format_double(rel) << '\n';
				out << "crbpso vs " << r.algo << ": " << format_fixed(100.0 * rel, 2) << "% lower mean objective\n";
			}
		}
		return kOk;
	});
}

int cmd_oracle(const std::filesystem::path& scenario, std::uint64_t max_space, std::ostream& out, std::ostream& err) {
	return guarded(err, [&] {
		auto loaded = read_scenario_file(scenario);
		const auto scn = validate_scenario(std::move(loaded.scenario));
		const auto result = enumerate_optimum(scn, {max_space});
		const nlohmann::json doc{{"objective", result.costs.objective},
		                         {"costs", costs_to_json(result.costs)},
		                         {"candidates", result.candidates},
		                         {"schedule", schedule_to_json(result.schedule, scn)}};
		out << doc.dump() << '\n';
		return kOk;
	});
}

}  // namespace les::cli
