#include "les/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "les/parallel.hpp"

namespace les {

std::string_view to_string(Algorithm algo) {
	switch (algo) {
		case Algorithm::unscheduled: return "unscheduled";
		case Algorithm::ga: return "ga";
		case Algorithm::bpso: return "bpso";
		case Algorithm::crbpso: return "crbpso";
	}
	return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
	for (auto algo : {Algorithm::unscheduled, Algorithm::ga, Algorithm::bpso, Algorithm::crbpso}) {
		if (to_string(algo) == name) return algo;
	}
	throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void validate_config(const AlgoConfig& cfg) {
	auto fail = [](const std::string& msg) { throw std::invalid_argument("optimizer." + msg); };
	if (cfg.population < 2) fail("population must be >= 2");
	if (cfg.iterations < 0) fail("iterations must be >= 0");
	if (cfg.p_crossover < 0.0 || cfg.p_crossover > 1.0) fail("p_crossover must be in [0, 1]");
	if (!(cfg.v_max > 0.0)) fail("v_max must be > 0");
	if (cfg.ga_crossover_rate < 0.0 || cfg.ga_crossover_rate > 1.0) fail("ga_crossover_rate must be in [0, 1]");
	if (cfg.ga_mutation_rate > 1.0) fail("ga_mutation_rate must be <= 1");
	if (cfg.stagnation_limit < 0) fail("stagnation_limit must be >= 0");
	if (cfg.cognitive < 0.0 || cfg.social < 0.0 || cfg.crossover_velocity < 0.0) {
		fail("learning coefficients must be >= 0");
	}
}

namespace {

std::size_t row_offset(std::size_t load, int horizon) { return load * static_cast<std::size_t>(horizon); }

// First slot the optimizer may still change for a load.
int free_from(const FlatLoad& load, const FrozenPrefix* frozen) {
	return frozen ? std::max(load.window.first, frozen->until_slot) : load.window.first;
}

// Start of a contiguous run already fixed by the realized past, or -1.
int frozen_start(const FlatLoad& load, std::size_t flat, const FrozenPrefix* frozen) {
	if (!frozen) return -1;
	const auto row = frozen->realized.row(flat);
	for (int t = load.window.first; t <= load.window.last && t < frozen->until_slot; ++t) {
		if (row[static_cast<std::size_t>(t)] != 0) return t;
	}
	return -1;
}

}  // namespace

Bits repair(Bits position, const ValidatedScenario& scn, const FrozenPrefix* frozen) {
	const int horizon = scn.horizon();
	if (position.size() != scn.load_count() * static_cast<std::size_t>(horizon)) {
		throw DimensionMismatch("position length does not match scenario");
	}
	const auto loads = scn.loads();
	for (std::size_t i = 0; i < loads.size(); ++i) {
		const FlatLoad& load = loads[i];
		std::uint8_t* row = position.data() + row_offset(i, horizon);
		const int n = load.spec.packets_required;
		const int from = free_from(load, frozen);

		for (int t = 0; t < horizon; ++t) {
			if (!load.window.contains(t)) row[t] = 0;
		}
		if (frozen) {
			const auto past = frozen->realized.row(i);
			for (int t = 0; t < std::min(frozen->until_slot, horizon); ++t) row[t] = past[static_cast<std::size_t>(t)];
		}

		if (load.spec.contiguous) {
			int start = frozen_start(load, i, frozen);
			if (start < 0) {
				start = std::max(load.spec.request_slot, from);
				for (int t = from; t <= load.window.last; ++t) {
					if (row[t] != 0) {
						start = t;
						break;
					}
				}
				start = std::min(start, load.spec.latest_start);
			}
			for (int t = from; t <= load.window.last; ++t) row[t] = 0;
			for (int k = 0; k < n; ++k) row[start + k] = 1;
			continue;
		}

		int count = 0;
		for (int t = load.window.first; t <= load.window.last; ++t) count += row[t] != 0 ? 1 : 0;
		for (int t = from; t <= load.window.last && count < n; ++t) {
			if (row[t] == 0) {
				row[t] = 1;
				++count;
			}
		}
		for (int t = load.window.last; t >= from && count > n; --t) {
			if (row[t] != 0) {
				row[t] = 0;
				--count;
			}
		}
	}
	return position;
}

Bits random_feasible(const ValidatedScenario& scn, Rng& rng, const FrozenPrefix* frozen) {
	const int horizon = scn.horizon();
	Bits bits(scn.load_count() * static_cast<std::size_t>(horizon), 0);
	if (frozen) {
		for (std::size_t i = 0; i < scn.load_count(); ++i) {
			const auto past = frozen->realized.row(i);
			for (int t = 0; t < std::min(frozen->until_slot, horizon); ++t) {
				bits[row_offset(i, horizon) + static_cast<std::size_t>(t)] = past[static_cast<std::size_t>(t)];
			}
		}
	}
	const auto loads = scn.loads();
	std::vector<int> slots;
	for (std::size_t i = 0; i < loads.size(); ++i) {
		const FlatLoad& load = loads[i];
		std::uint8_t* row = bits.data() + row_offset(i, horizon);
		const int from = free_from(load, frozen);
		if (load.spec.contiguous) {
			if (const int started = frozen_start(load, i, frozen); started >= 0) {
				// Finish the run the realized past already began.
				for (int k = 0; k < load.spec.packets_required; ++k) row[started + k] = 1;
				continue;
			}
			const int lo = std::max(load.spec.request_slot, from);
			const int hi = load.spec.latest_start;
			const int start = lo + static_cast<int>(rng.below(static_cast<std::size_t>(std::max(1, hi - lo + 1))));
			for (int k = 0; k < load.spec.packets_required; ++k) row[start + k] = 1;
			continue;
		}
		int placed = 0;
		for (int t = load.window.first; t < from; ++t) placed += row[t] != 0 ? 1 : 0;
		slots.clear();
		for (int t = from; t <= load.window.last; ++t) slots.push_back(t);
		const int need = std::min<int>(load.spec.packets_required - placed, static_cast<int>(slots.size()));
		// Partial Fisher-Yates: the first `need` entries become a uniform subset.
		for (int k = 0; k < need; ++k) {
			const auto j = static_cast<std::size_t>(k) + rng.below(slots.size() - static_cast<std::size_t>(k));
			std::swap(slots[static_cast<std::size_t>(k)], slots[j]);
			row[slots[static_cast<std::size_t>(k)]] = 1;
		}
	}
	return bits;
}

Evaluator::Evaluator(const ValidatedScenario& scn, unsigned threads)
    : scn_(&scn), threads_(resolve_threads(threads)) {}

double Evaluator::operator()(const Bits& bits) const {
	++count_;
	return evaluate(ScheduleMatrix(scn_->load_count(), scn_->horizon(), bits), *scn_).objective;
}

std::vector<double> Evaluator::batch(std::span<const Bits> candidates) const {
	std::vector<double> out(candidates.size());
	parallel_for(candidates.size(), threads_, [&](std::size_t i) {
		out[i] = evaluate(ScheduleMatrix(scn_->load_count(), scn_->horizon(), candidates[i]), *scn_).objective;
	});
	count_ += candidates.size();
	return out;
}

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

namespace {

void sample_bits(Bits& position, const std::vector<double>& velocity, Rng& rng) {
	for (std::size_t j = 0; j < position.size(); ++j) position[j] = rng.unit() < sigmoid(velocity[j]) ? 1 : 0;
}

// Barrier after a swarm move: local bests, then the global best in particle order.
// Ties keep the incumbent.
void update_bests(SwarmState& state) {
	for (auto& p : state.particles) {
		if (p.objective < p.local_best_objective) {
			p.local_best = p.position;
			p.local_best_objective = p.objective;
		}
	}
	for (const auto& p : state.particles) {
		if (p.local_best_objective < state.global_best_objective) {
			state.global_best = p.local_best;
			state.global_best_objective = p.local_best_objective;
		}
	}
	++state.iteration;
}

// Moves every particle with its own stream, then evaluates. `move` computes the new velocity.
template <typename Move>
void swarm_step(SwarmState& state, const Evaluator& evaluate, const ValidatedScenario& scn,
                const FrozenPrefix* frozen, Move&& move) {
	const auto n = state.particles.size();
	for (std::size_t i = 0; i < n; ++i) {
		Particle& p = state.particles[i];
		Rng& rng = state.streams[i];
		p.velocity = move(p, rng);
		sample_bits(p.position, p.velocity, rng);
		p.position = repair(std::move(p.position), scn, frozen);
	}
	std::vector<Bits> positions;
	positions.reserve(n);
	for (const auto& p : state.particles) positions.push_back(p.position);
	const auto objectives = evaluate.batch(positions);
	for (std::size_t i = 0; i < n; ++i) state.particles[i].objective = objectives[i];
	update_bests(state);
}

}  // namespace

SwarmState init_population(const ValidatedScenario& scn, const AlgoConfig& cfg, const Evaluator& evaluate,
                           const FrozenPrefix* frozen) {
	SwarmState state;
	state.master = Rng(cfg.seed);
	const auto n = static_cast<std::size_t>(cfg.population);
	state.particles.resize(n);
	std::vector<Bits> positions;
	positions.reserve(n);
	for (std::size_t i = 0; i < n; ++i) {
		state.streams.emplace_back(derive_seed(cfg.seed, i));
		Rng& rng = state.streams.back();
		Particle& p = state.particles[i];
		p.position = random_feasible(scn, rng, frozen);
		p.velocity.resize(p.position.size());
		for (auto& v : p.velocity) v = rng.uniform(cfg.v_min(), cfg.v_max);
		positions.push_back(p.position);
	}
	const auto objectives = evaluate.batch(positions);
	for (std::size_t i = 0; i < n; ++i) {
		Particle& p = state.particles[i];
		p.objective = objectives[i];
		p.local_best = p.position;
		p.local_best_objective = p.objective;
		if (i == 0 || p.objective < state.global_best_objective) {
			state.global_best = p.position;
			state.global_best_objective = p.objective;
		}
	}
	return state;
}

void bpso_step(SwarmState& state, const AlgoConfig& cfg, const Evaluator& evaluate, const FrozenPrefix* frozen) {
	const Bits& global = state.global_best;
	swarm_step(state, evaluate, evaluate.scenario(), frozen, [&](const Particle& p, Rng& rng) {
		std::vector<double> v = p.velocity;
		for (std::size_t j = 0; j < v.size(); ++j) {
			const double s = p.position[j];
			const double r1 = rng.unit();
			const double r2 = rng.unit();
			v[j] += cfg.cognitive * r1 * (p.local_best[j] - s) + cfg.social * r2 * (global[j] - s);
			v[j] = std::clamp(v[j], cfg.v_min(), cfg.v_max);
		}
		return v;
	});
}

CrossoverVelocity crbpso_velocity(const Particle& particle, const Bits& global_best, const AlgoConfig& cfg,
                                  Rng& rng) {
	CrossoverVelocity out;
	out.cognitive = rng.bernoulli(cfg.p_crossover);
	const Bits& target = out.cognitive ? particle.local_best : global_best;
	out.velocity = particle.velocity;
	for (std::size_t j = 0; j < out.velocity.size(); ++j) {
		const double pull = rng.unit() * (static_cast<double>(target[j]) - particle.position[j]);
		out.velocity[j] = std::clamp(out.velocity[j] + cfg.crossover_velocity * pull, cfg.v_min(), cfg.v_max);
	}
	return out;
}

void crbpso_step(SwarmState& state, const AlgoConfig& cfg, const Evaluator& evaluate,
                 const FrozenPrefix* frozen) {
	const Bits& global = state.global_best;
	swarm_step(state, evaluate, evaluate.scenario(), frozen, [&](const Particle& p, Rng& rng) {
		return crbpso_velocity(p, global, cfg, rng).velocity;
	});
}

namespace {

std::size_t tournament(const std::vector<Individual>& population, Rng& rng) {
	const std::size_t a = rng.below(population.size());
	const std::size_t b = rng.below(population.size());
	if (population[b].objective < population[a].objective) return b;
	if (population[a].objective < population[b].objective) return a;
	return std::min(a, b);
}

double mutation_rate(const AlgoConfig& cfg, std::size_t genome_length) {
	return cfg.ga_mutation_rate < 0.0 ? 1.0 / static_cast<double>(genome_length) : cfg.ga_mutation_rate;
}

}  // namespace

std::vector<Individual> ga_step(std::vector<Individual> population, const AlgoConfig& cfg,
                                const Evaluator& evaluate, Rng& rng, const FrozenPrefix* frozen) {
	const auto best = static_cast<std::size_t>(std::distance(
	    population.begin(), std::min_element(population.begin(), population.end(),
	                                         [](const auto& a, const auto& b) { return a.objective < b.objective; })));
	std::vector<Individual> next;
	next.reserve(population.size());
	next.push_back(population[best]);

	const double mutate = mutation_rate(cfg, population.front().genome.size());
	std::vector<Bits> children;
	for (std::size_t k = 1; k < population.size(); ++k) {
		const Bits& a = population[tournament(population, rng)].genome;
		const Bits& b = population[tournament(population, rng)].genome;
		Bits child = a;
		if (rng.bernoulli(cfg.ga_crossover_rate)) {
			for (std::size_t j = 0; j < child.size(); ++j) {
				if (rng.bernoulli(0.5)) child[j] = b[j];
			}
		}
		if (mutate > 0.0) {
			for (auto& bit : child) {
				if (rng.bernoulli(mutate)) bit ^= 1;
			}
		}
		children.push_back(repair(std::move(child), evaluate.scenario(), frozen));
	}
	const auto objectives = evaluate.batch(children);
	for (std::size_t k = 0; k < children.size(); ++k) next.push_back({std::move(children[k]), objectives[k]});
	return next;
}

namespace {

class Tracker {
public:
	Tracker(const AlgoConfig& cfg, double initial) : limit_(cfg.stagnation_limit), best_(initial) {
		trace.push_back(initial);
	}

	// Records the best after an iteration; false once the search has stagnated.
	bool record(double best) {
		if (best < best_) {
			best_ = best;
			stale_ = 0;
		} else {
			++stale_;
		}
		trace.push_back(best_);
		return limit_ == 0 || stale_ < limit_;
	}

	std::vector<double> trace;

private:
	int limit_;
	double best_;
	int stale_ = 0;
};

}  // namespace

OptimizationResult run(Algorithm algo, const ValidatedScenario& scn, const AlgoConfig& cfg,
                       const FrozenPrefix* frozen) {
	validate_config(cfg);
	const auto started = std::chrono::steady_clock::now();
	const Evaluator evaluate(scn, cfg.threads);

	OptimizationResult result;
	result.algo = algo;
	result.seed = cfg.seed;

	Bits best;
	switch (algo) {
		case Algorithm::unscheduled: {
			best = unscheduled_schedule(scn).bits();
			result.trace.push_back(evaluate(best));
			break;
		}
		case Algorithm::ga: {
			std::vector<Individual> population;
			std::vector<Bits> genomes;
			for (int i = 0; i < cfg.population; ++i) {
				Rng stream(derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
				genomes.push_back(random_feasible(scn, stream, frozen));
			}
			const auto objectives = evaluate.batch(genomes);
			for (std::size_t i = 0; i < genomes.size(); ++i) population.push_back({std::move(genomes[i]), objectives[i]});

			auto incumbent = [&] {
				return std::min_element(population.begin(), population.end(),
				                        [](const auto& a, const auto& b) { return a.objective < b.objective; });
			};
			Rng rng(cfg.seed);
			Tracker tracker(cfg, incumbent()->objective);
			for (int it = 0; it < cfg.iterations; ++it) {
				population = ga_step(std::move(population), cfg, evaluate, rng, frozen);
				if (!tracker.record(incumbent()->objective)) break;
			}
			best = incumbent()->genome;
			result.trace = std::move(tracker.trace);
			break;
		}
		case Algorithm::bpso:
		case Algorithm::crbpso: {
			SwarmState state = init_population(scn, cfg, evaluate, frozen);
			Tracker tracker(cfg, state.global_best_objective);
			for (int it = 0; it < cfg.iterations; ++it) {
				if (algo == Algorithm::bpso) {
					bpso_step(state, cfg, evaluate, frozen);
				} else {
					crbpso_step(state, cfg, evaluate, frozen);
				}
				if (!tracker.record(state.global_best_objective)) break;
			}
			best = state.global_best;
			result.trace = std::move(tracker.trace);
			break;
		}
	}

	result.best = ScheduleMatrix(scn.load_count(), scn.horizon(), std::move(best));
	result.best_costs = les::evaluate(result.best, scn);
	result.evaluations = evaluate.evaluations();
	result.wall_time_ms =
	    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
	return result;
}

}  // namespace les
