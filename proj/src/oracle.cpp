#include "les/oracle.hpp"

#include <limits>
#include <string>

#include "les/parallel.hpp"

namespace les {

SearchSpaceTooLarge::SearchSpaceTooLarge(std::uint64_t size, std::uint64_t bound)
    : std::runtime_error("search space of " + std::to_string(size) + " schedules exceeds the oracle bound of " +
                         std::to_string(bound)),
      size_(size) {}

std::vector<std::vector<int>> load_placements(const FlatLoad& load) {
	std::vector<std::vector<int>> out;
	const int n = load.spec.packets_required;
	if (load.spec.contiguous) {
		for (int start = load.spec.request_slot; start <= load.spec.latest_start; ++start) {
			std::vector<int> slots(static_cast<std::size_t>(n));
			for (int k = 0; k < n; ++k) slots[static_cast<std::size_t>(k)] = start + k;
			out.push_back(std::move(slots));
		}
		return out;
	}
	// Combinations of the window's slots in lexicographic order.
	std::vector<int> pick(static_cast<std::size_t>(n));
	for (int k = 0; k < n; ++k) pick[static_cast<std::size_t>(k)] = load.window.first + k;
	const int last = load.window.last;
	while (true) {
		out.push_back(pick);
		int k = n - 1;
		while (k >= 0 && pick[static_cast<std::size_t>(k)] == last - (n - 1 - k)) --k;
		if (k < 0) break;
		++pick[static_cast<std::size_t>(k)];
		for (int m = k + 1; m < n; ++m) pick[static_cast<std::size_t>(m)] = pick[static_cast<std::size_t>(m - 1)] + 1;
	}
	return out;
}

std::uint64_t search_space_size(const ValidatedScenario& scn) {
	constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
	std::uint64_t size = 1;
	for (const auto& load : scn.loads()) {
		const auto count = static_cast<std::uint64_t>(load_placements(load).size());
		if (size > kMax / count) return kMax;
		size *= count;
	}
	return size;
}

namespace {

struct Best {
	double objective = std::numeric_limits<double>::infinity();
	std::vector<std::uint8_t> bits;
	bool found = false;

	void offer(double objective_value, const std::vector<std::uint8_t>& candidate) {
		if (!found || objective_value < objective || (objective_value == objective && candidate < bits)) {
			objective = objective_value;
			bits = candidate;
			found = true;
		}
	}
};

}  // namespace

OracleResult enumerate_optimum(const ValidatedScenario& scn, TinyScenarioBound bound, unsigned threads) {
	const std::uint64_t total = search_space_size(scn);
	if (total > bound.max_search_space) throw SearchSpaceTooLarge(total, bound.max_search_space);

	std::vector<std::vector<std::vector<int>>> placements;
	for (const auto& load : scn.loads()) placements.push_back(load_placements(load));

	const unsigned workers = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(total)));
	std::vector<Best> shards(workers);
	const std::uint64_t chunk = (total + workers - 1) / workers;

	parallel_for(workers, workers, [&](std::size_t w) {
		ScheduleMatrix schedule = ScheduleMatrix::for_scenario(scn);
		const std::uint64_t begin = w * chunk;
		const std::uint64_t end = std::min(total, begin + chunk);
		for (std::uint64_t index = begin; index < end; ++index) {
			std::fill(schedule.bits().begin(), schedule.bits().end(), std::uint8_t{0});
			std::uint64_t rest = index;
			for (std::size_t i = 0; i < placements.size(); ++i) {
				const auto radix = placements[i].size();
				for (int slot : placements[i][rest % radix]) schedule.set(i, slot);
				rest /= radix;
			}
			shards[w].offer(evaluate(schedule, scn).objective, schedule.bits());
		}
	});

	Best best;
	for (const auto& shard : shards) {
		if (shard.found) best.offer(shard.objective, shard.bits);
	}
	OracleResult result;
	result.schedule = ScheduleMatrix(scn.load_count(), scn.horizon(), std::move(best.bits));
	result.costs = evaluate(result.schedule, scn);
	result.candidates = total;
	return result;
}

OracleResult unscheduled_baseline(const ValidatedScenario& scn) {
	OracleResult result;
	result.schedule = unscheduled_schedule(scn);
	result.costs = evaluate(result.schedule, scn);
	result.candidates = 1;
	return result;
}

}  // namespace les
