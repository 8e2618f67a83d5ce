#include <gtest/gtest.h>

#include "les/core_model.hpp"
#include "support.hpp"

namespace les {
namespace {

using test::single_load_scenario;

TEST(PvOutput, Examples) {
	const PvSpec pv{0.18, 10.0, 2.85};
	EXPECT_DOUBLE_EQ(pv_output(pv, 1.0, 25.0, 1.0), 1.8);
	EXPECT_EQ(pv_output(pv, 0.0, 25.0, 1.0), 0.0);
	EXPECT_DOUBLE_EQ(pv_output(pv, 1.0, 45.0, 1.0), 1.8 * 0.9);
}

TEST(PvOutput, ClampedToRating) {
	const PvSpec pv{0.18, 30.0, 2.85};
	EXPECT_EQ(pv_output(pv, 1.0, 25.0, 1.0), 2.85);
}

TEST(LoadDelay, Examples) {
	LoadSpec load;
	load.request_slot = 8;
	load.latest_start = 16;
	EXPECT_EQ(load_delay(load, 8), 0.0);
	EXPECT_EQ(load_delay(load, 16), 1.0);
	EXPECT_EQ(load_delay(load, 10), 0.25);
}

TEST(LoadDelay, ZeroWidthWindow) {
	LoadSpec load;
	load.request_slot = 5;
	load.latest_start = 5;
	EXPECT_EQ(load_delay(load, 5), 0.0);
}

TEST(LoadDelay, OutsideWindowThrows) {
	LoadSpec load;
	load.request_slot = 8;
	load.latest_start = 16;
	EXPECT_THROW(load_delay(load, 7), ContractViolation);
	EXPECT_THROW(load_delay(load, 17), ContractViolation);
}

Scenario two_homes_one_load() {
	Scenario s = single_load_scenario(3, 0, 2, false);
	s.homes.push_back(s.homes.front());
	return s;
}

TEST(TotalDemand, Examples) {
	const auto scn = validate_scenario(two_homes_one_load());
	EXPECT_EQ(total_demand(unscheduled_schedule(scn), scn), 3.0);
	EXPECT_EQ(total_demand(ScheduleMatrix::for_scenario(scn), scn), 0.0);
}

TEST(TotalDemand, DimensionMismatch) {
	const auto scn = validate_scenario(two_homes_one_load());
	EXPECT_THROW(total_demand(ScheduleMatrix(1, 6), scn), DimensionMismatch);
}

TEST(AverageDelay, Examples) {
	const auto scn = validate_scenario(single_load_scenario(1, 0, 4, true));
	EXPECT_EQ(average_delay(unscheduled_schedule(scn), scn), 0.0);
	ScheduleMatrix s = ScheduleMatrix::for_scenario(scn);
	s.set(0, 1);
	EXPECT_EQ(average_delay(s, scn), 0.25);
}

TEST(PlacedLoadDelay, ContiguousMatchesStartDelay) {
	const auto scn = validate_scenario(single_load_scenario(2, 0, 4, true));
	const FlatLoad& load = scn.loads()[0];
	for (int start = 0; start <= 4; ++start) {
		ScheduleMatrix s = ScheduleMatrix::for_scenario(scn);
		s.set(0, start);
		s.set(0, start + 1);
		EXPECT_DOUBLE_EQ(placed_load_delay(load, s.row(0)), load_delay(load.spec, start));
	}
}

TEST(PlacedLoadDelay, NoPacketsIsFullyDelayed) {
	const auto scn = validate_scenario(single_load_scenario(2, 0, 4, false));
	const ScheduleMatrix s = ScheduleMatrix::for_scenario(scn);
	EXPECT_EQ(placed_load_delay(scn.loads()[0], s.row(0)), 1.0);
}

TEST(AveragePv, Examples) {
	Scenario s = single_load_scenario(1, 0, 0, false);
	EXPECT_EQ(average_pv(validate_scenario(s)), 0.0);

	s.horizon = 24;
	s.tariff.grid_buy.assign(24, 4.0);
	s.tariff.grid_sell.assign(24, 1.0);
	s.weather.irradiance.assign(24, 1.0);
	s.weather.outdoor_temp.assign(24, 25.0);
	s.homes[0].pv = {0.18, 10.0, 2.85};
	EXPECT_NEAR(average_pv(validate_scenario(s)), 43.2, 1e-12);
}

TEST(ScheduleViolation, CountsEveryDefect) {
	const auto scn = validate_scenario(single_load_scenario(2, 1, 2, true));
	ScheduleMatrix s = ScheduleMatrix::for_scenario(scn);
	EXPECT_EQ(schedule_violation(s, scn), 2.0);  // two missing packets
	s.set(0, 0);                                 // stray bit outside the window
	s.set(0, 1);
	s.set(0, 3);                                 // second run
	EXPECT_EQ(schedule_violation(s, scn), 2.0);
	EXPECT_FALSE(is_feasible(s, scn));
	EXPECT_TRUE(is_feasible(unscheduled_schedule(scn), scn));
}

TEST(ScheduleMatrix, BitCountChecked) {
	EXPECT_THROW(ScheduleMatrix(2, 3, std::vector<std::uint8_t>(5)), DimensionMismatch);
	ScheduleMatrix m(2, 3);
	m.set(1, 2);
	EXPECT_TRUE(m.test(1, 2));
	EXPECT_EQ(m.bits()[5], 1);
}

TEST(AverageDelayProperties, MatchesPerLoadRecomputation) {
	Rng rng(5);
	for (int trial = 0; trial < 300; ++trial) {
		const auto scn = validate_scenario(test::random_scenario(rng));
		const ScheduleMatrix s(scn.load_count(), scn.horizon(), random_feasible(scn, rng));
		double sum = 0.0;
		for (const auto& load : scn.loads()) {
			const auto row = s.row(scn.flat_index(load.home, load.index));
			std::vector<int> slots;
			for (int t = 0; t < scn.horizon(); ++t) {
				if (row[static_cast<std::size_t>(t)]) slots.push_back(t);
			}
			double late = 0.0;
			const int span = load.spec.latest_start - load.spec.request_slot;
			for (std::size_t k = 0; k < slots.size(); ++k) {
				if (span > 0) late += static_cast<double>(slots[k] - load.spec.request_slot - static_cast<int>(k)) / span;
			}
			sum += late / static_cast<double>(slots.size());
		}
		EXPECT_NEAR(average_delay(s, scn), sum / scn.prosumers(), 1e-12);
	}
}

}  // namespace
}  // namespace les
