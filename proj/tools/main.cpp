#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
	CLI::App app{"Local energy system scheduler: GA, BPSO and crossover BPSO over a smart-home community"};
	app.require_subcommand(1);

	std::string validate_path;
	auto* validate = app.add_subcommand("validate", "Check a scenario file");
	validate->add_option("file", validate_path, "Scenario JSON")->required();

	les::cli::RunOptions run_opts;
	std::uint64_t run_seed = 0;
	auto* run = app.add_subcommand("run", "Run one episode and write episode.jsonl, trace.csv, costs.csv");
	run->add_option("file", run_opts.scenario, "Scenario JSON")->required();
	run->add_option("--algo", run_opts.algo, "unscheduled | ga | bpso | crbpso");
	auto* seed_opt = run->add_option("--seed", run_seed, "RNG seed (default: scenario seed_default)");
	run->add_option("--out", run_opts.out_dir, "Output directory");
	run->add_option("--population", run_opts.population, "Override population size");
	run->add_option("--iterations", run_opts.iterations, "Override iteration budget");
	run->add_flag("--replan", run_opts.replan, "Re-plan every slot with the past pinned");

	les::cli::SweepSpec sweep_spec;
	std::string seeds_text = "30";
	auto* sweep = app.add_subcommand("sweep", "Multi-seed comparison with a per-algorithm summary");
	sweep->add_option("file", sweep_spec.scenario, "Scenario JSON")->required();
	sweep->add_option("--algos", sweep_spec.algos, "Algorithms")->delimiter(',');
	sweep->add_option("--seeds", seeds_text, "Seed count N (seeds 1..N) or comma-separated list");
	sweep->add_option("--out", sweep_spec.out_dir, "Output directory");
	sweep->add_option("--population", sweep_spec.population, "Override population size");
	sweep->add_option("--iterations", sweep_spec.iterations, "Override iteration budget");

	std::string oracle_path;
	std::uint64_t max_space = std::uint64_t{1} << 20;
	auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny scenario");
	oracle->add_option("file", oracle_path, "Scenario JSON")->required();
	oracle->add_option("--max-space", max_space, "Largest search space to enumerate");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e) == 0 ? 0 : les::cli::kDomainError;
	}

	if (*validate) return les::cli::cmd_validate(validate_path, std::cout, std::cerr);
	if (*run) {
		if (*seed_opt) run_opts.seed = run_seed;
		return les::cli::cmd_run(run_opts, std::cout, std::cerr);
	}
	if (*sweep) {
		try {
			sweep_spec.seeds = les::cli::parse_seeds(seeds_text);
		} catch (const std::exception&) {
			std::cerr << "error: invalid --seeds '" << seeds_text << "'\n";
			return les::cli::kDomainError;
		}
		return les::cli::cmd_sweep(sweep_spec, std::cout, std::cerr);
	}
	return les::cli::cmd_oracle(oracle_path, max_space, std::cout, std::cerr);
}
