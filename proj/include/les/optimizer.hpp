#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "les/core_model.hpp"
#include "les/costs.hpp"
#include "les/rng.hpp"

namespace les {

enum class Algorithm { unscheduled, ga, bpso, crbpso };

std::string_view to_string(Algorithm algo);
/// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(std::string_view name);

struct AlgoConfig {
	int population = 50;
	int iterations = 200;
	double cognitive = 2.0;        // alpha_1
	double social = 2.0;           // alpha_2
	double crossover_velocity = 1.0;  // alpha in the crBPSO update
	double p_crossover = 0.5;      // P_cr
	double v_max = 4.0;
	double ga_crossover_rate = 0.9;
	// Per-bit mutation probability; a negative value means 1 / genome length.
	double ga_mutation_rate = -1.0;
	// Stop after this many iterations without improvement of the best (0 disables).
	int stagnation_limit = 50;
	std::uint64_t seed = 1;
	// Evaluation workers; 0 defers to CRBPSO_LES_THREADS.
	unsigned threads = 0;

	double v_min() const { return -v_max; }
};

/// Throws std::invalid_argument naming the offending field.
void validate_config(const AlgoConfig& cfg);

using Bits = std::vector<std::uint8_t>;

// Slots before `until_slot` are pinned to the realized schedule; used when the
// master re-plans mid-horizon.
struct FrozenPrefix {
	int until_slot = 0;
	ScheduleMatrix realized;
};

/// Enforces packet conservation and window containment for every load: stray bits outside the window are
/// cleared, missing packets go to the earliest free in-window slots, extra packets are dropped from the
/// latest set slots. A contiguous load is rebuilt as one run starting at its first in-window bit (clamped
/// to latest_start), or at the request slot when it has none.
Bits repair(Bits position, const ValidatedScenario& scn, const FrozenPrefix* frozen = nullptr);

/// Uniform random feasible placement of every load.
Bits random_feasible(const ValidatedScenario& scn, Rng& rng, const FrozenPrefix* frozen = nullptr);

// Batch objective evaluation. Results depend only on the inputs, never on the worker count.
class Evaluator {
public:
	Evaluator(const ValidatedScenario& scn, unsigned threads);

	double operator()(const Bits& bits) const;
	std::vector<double> batch(std::span<const Bits> candidates) const;

	const ValidatedScenario& scenario() const { return *scn_; }
	std::uint64_t evaluations() const { return count_; }

private:
	const ValidatedScenario* scn_;
	unsigned threads_;
	mutable std::uint64_t count_ = 0;
};

struct Particle {
	Bits position;
	std::vector<double> velocity;
	Bits local_best;
	double local_best_objective = 0.0;
	double objective = 0.0;
};

struct SwarmState {
	std::vector<Particle> particles;
	Bits global_best;
	double global_best_objective = 0.0;
	int iteration = 0;
	std::vector<Rng> streams;  // one per particle
	Rng master;
};

/// Random feasible positions, velocities uniform in [v_min, v_max], bests evaluated.
SwarmState init_population(const ValidatedScenario& scn, const AlgoConfig& cfg, const Evaluator& evaluate,
                           const FrozenPrefix* frozen = nullptr);

/// Sigmoid transfer: bit <- 1 iff u < 1 / (1 + exp(-v)).
double sigmoid(double v);

/// Canonical BPSO iteration: v += a1*r1*(s_r - s) + a2*r2*(s_g - s), clamp, sample bits, repair, evaluate.
void bpso_step(SwarmState& state, const AlgoConfig& cfg, const Evaluator& evaluate,
               const FrozenPrefix* frozen = nullptr);

struct CrossoverVelocity {
	std::vector<double> velocity;
	bool cognitive = false;  // which pull was drawn
};

/// crBPSO velocity: v + alpha * v_cr, where v_cr = r1*(s_r - s) with probability P_cr and
/// r2*(s_g - s) otherwise. One branch draw per particle, then one r per component. Clamped.
CrossoverVelocity crbpso_velocity(const Particle& particle, const Bits& global_best, const AlgoConfig& cfg,
                                  Rng& rng);

void crbpso_step(SwarmState& state, const AlgoConfig& cfg, const Evaluator& evaluate,
                 const FrozenPrefix* frozen = nullptr);

struct Individual {
	Bits genome;
	double objective = 0.0;
};

/// One GA generation: keep the best individual, fill the rest with binary-tournament parents, uniform
/// crossover at ga_crossover_rate (clone otherwise), bit-flip mutation, repair, evaluate.
std::vector<Individual> ga_step(std::vector<Individual> population, const AlgoConfig& cfg,
                                const Evaluator& evaluate, Rng& rng, const FrozenPrefix* frozen = nullptr);

struct OptimizationResult {
	Algorithm algo = Algorithm::unscheduled;
	std::uint64_t seed = 0;
	ScheduleMatrix best;
	CostBreakdown best_costs;
	std::vector<double> trace;  // best objective after initialization and after each iteration
	std::uint64_t evaluations = 0;
	double wall_time_ms = 0.0;
};

OptimizationResult run(Algorithm algo, const ValidatedScenario& scn, const AlgoConfig& cfg,
                       const FrozenPrefix* frozen = nullptr);

}  // namespace les
