#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "les/core_model.hpp"
#include "les/costs.hpp"

namespace les {

struct TinyScenarioBound {
	std::uint64_t max_search_space = std::uint64_t{1} << 20;
};

class SearchSpaceTooLarge : public std::runtime_error {
public:
	SearchSpaceTooLarge(std::uint64_t size, std::uint64_t bound);

	std::uint64_t size() const noexcept { return size_; }

private:
	std::uint64_t size_;
};

struct OracleResult {
	ScheduleMatrix schedule;
	CostBreakdown costs;
	std::uint64_t candidates = 0;
};

/// Every feasible placement of one load as its list of occupied slots. Contiguous loads contribute
/// one placement per start slot, the others every packets_required-subset of the window.
std::vector<std::vector<int>> load_placements(const FlatLoad& load);

/// Number of feasible schedules (saturates at UINT64_MAX).
std::uint64_t search_space_size(const ValidatedScenario& scn);

/// Exhaustive argmin of the objective over all feasible schedules. Ties go to the lexicographically
/// smallest bit vector. Throws SearchSpaceTooLarge above the bound.
OracleResult enumerate_optimum(const ValidatedScenario& scn, TinyScenarioBound bound = {},
                               unsigned threads = 1);

/// All loads served from their request slots.
OracleResult unscheduled_baseline(const ValidatedScenario& scn);

}  // namespace les
