#include <gtest/gtest.h>

#include <vector>

#include "les/rng.hpp"
#include "les/storage.hpp"

namespace les {
namespace {

EssSpec spec_with(double capacity, double floor, double rate) {
	EssSpec s;
	s.capacity = capacity;
	s.floor = floor;
	s.max_charge_rate = rate;
	s.max_discharge_rate = rate;
	return s;
}

TEST(ChargeHeadroom, Examples) {
	const auto spec = spec_with(5.0, 0.0, 2.0);
	EXPECT_EQ(charge_headroom({5.0}, spec), 0.0);
	EXPECT_EQ(charge_headroom({0.0}, spec), 2.0);
	EXPECT_EQ(charge_headroom({4.5}, spec), 0.5);
}

TEST(DischargeHeadroom, Examples) {
	EXPECT_EQ(discharge_headroom({1.0}, spec_with(5.0, 1.0, 2.0)), 0.0);
	EXPECT_EQ(discharge_headroom({5.0}, spec_with(5.0, 0.0, 2.0)), 2.0);
	EXPECT_EQ(discharge_headroom({1.5}, spec_with(5.0, 1.0, 2.0)), 0.5);
}

TEST(StepEss, Charge) {
	const auto next = step_ess({2.0}, 1.0, 0.0, EssSpec{});
	EXPECT_DOUBLE_EQ(next.level, 2.3);
	EXPECT_TRUE(next.charged);
	EXPECT_FALSE(next.discharged);
}

TEST(StepEss, IdentityWithoutDecay) {
	EssSpec spec;
	spec.decay = 1.0;
	const auto next = step_ess({2.0}, 0.0, 0.0, spec);
	EXPECT_EQ(next.level, 2.0);
	EXPECT_FALSE(next.charged);
	EXPECT_FALSE(next.discharged);
}

TEST(StepEss, Discharge) {
	const auto next = step_ess({2.0}, 0.0, 1.0, EssSpec{});
	EXPECT_DOUBLE_EQ(next.level, 0.9);
	EXPECT_TRUE(next.discharged);
}

TEST(StepEss, ContractViolations) {
	EXPECT_THROW(step_ess({2.0}, 0.5, 0.5, EssSpec{}), ContractViolation);
	EXPECT_THROW(step_ess({4.5}, 1.0, 0.0, EssSpec{}), ContractViolation);
	EXPECT_THROW(step_ess({0.5}, 0.0, 1.0, EssSpec{}), ContractViolation);
	EXPECT_THROW(step_ess({1.0}, -0.1, 0.0, EssSpec{}), ContractViolation);
}

TEST(SlotDegradation, Examples) {
	EssSpec spec;
	spec.kappa_charge = 1.0;
	spec.kappa_discharge = 1.5;
	EXPECT_EQ(slot_degradation({1.0, false, false}, spec), 0.0);
	EXPECT_EQ(slot_degradation({1.0, true, false}, spec), 1.0);
	EXPECT_EQ(slot_degradation({1.0, false, true}, spec), 1.5);
}

TEST(AverageDegradation, Examples) {
	const std::vector<std::vector<double>> idle{{0.0, 0.0}, {0.0}};
	EXPECT_EQ(average_degradation(idle, 2), 0.0);
	const std::vector<std::vector<double>> three{{1.0, 1.0, 1.0}};
	EXPECT_EQ(average_degradation(three, 1), 3.0);
}

TEST(AverageDegradation, MatchesResum) {
	Rng rng(3);
	for (int trial = 0; trial < 100; ++trial) {
		std::vector<std::vector<double>> homes(1 + rng.below(5));
		double expected = 0.0;
		for (auto& h : homes) {
			h.resize(rng.below(30));
			for (auto& c : h) {
				c = rng.bernoulli(0.5) ? rng.uniform(0.0, 2.0) : 0.0;
			}
		}
		for (auto it = homes.rbegin(); it != homes.rend(); ++it) {
			for (auto c = it->rbegin(); c != it->rend(); ++c) expected += *c;
		}
		const int j = 1 + static_cast<int>(rng.below(10));
		EXPECT_NEAR(average_degradation(homes, j), expected / j, 1e-12);
	}
}

TEST(StepEssProperties, StaysInBounds) {
	Rng rng(11);
	for (int trial = 0; trial < 2000; ++trial) {
		EssSpec spec;
		spec.capacity = rng.uniform(1.0, 8.0);
		spec.floor = rng.uniform(0.0, 0.5 * spec.capacity);
		spec.decay = rng.uniform(0.3, 1.0);
		spec.charge_eff = rng.uniform(0.3, 1.0);
		spec.discharge_eff = rng.uniform(0.3, 1.0);
		spec.max_charge_rate = rng.uniform(0.1, 3.0);
		spec.max_discharge_rate = rng.uniform(0.1, 3.0);
		EssState state{rng.uniform(spec.floor, spec.capacity)};
		for (int t = 0; t < 24; ++t) {
			const bool charge = rng.bernoulli(0.5);
			const double in = charge ? rng.uniform(0.0, charge_headroom(state, spec)) : 0.0;
			const double out = charge ? 0.0 : rng.uniform(0.0, discharge_headroom(state, spec));
			state = step_ess(state, in, out, spec);
			ASSERT_GE(state.level, spec.floor);
			ASSERT_LE(state.level, spec.capacity);
			ASSERT_FALSE(state.charged && state.discharged);
		}
	}
}

}  // namespace
}  // namespace les
