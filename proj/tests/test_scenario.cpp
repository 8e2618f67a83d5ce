#include <gtest/gtest.h>

#include <algorithm>

#include "les/scenario_io.hpp"
#include "support.hpp"

namespace les {
namespace {

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
	return std::any_of(violations.begin(), violations.end(),
	                   [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

TEST(ValidateScenario, DefaultScenarioAccepted) {
	const auto scn = test::load_scenario("default.json");
	EXPECT_EQ(scn.num_homes(), 10);
	EXPECT_EQ(scn.prosumers(), 10);
	EXPECT_EQ(scn.horizon(), 24);
}

TEST(ValidateScenario, ZeroHorizonRejected) {
	Scenario s = test::single_load_scenario(1, 0, 0, false);
	s.horizon = 0;
	try {
		validate_scenario(s);
		FAIL() << "expected ScenarioError";
	} catch (const ScenarioError& e) {
		EXPECT_TRUE(mentions(e.violations(), "horizon must be >= 1"));
	}
}

TEST(ValidateScenario, LatestStartBeyondHorizonNamesLoad) {
	Scenario s = test::single_load_scenario(1, 0, 6, false);
	const auto violations = scenario_violations(s);
	EXPECT_TRUE(mentions(violations, "homes[0].loads[0] (appliance).latest_start"));
}

TEST(ValidateScenario, CollectsAllViolations) {
	Scenario s = test::single_load_scenario(1, 0, 0, false);
	s.tariff.grid_sell[2] = 5.0;
	s.homes[0].ess.decay = 0.0;
	s.homes[0].loads[0].packet_energy = -1.0;
	const auto violations = scenario_violations(s);
	EXPECT_EQ(violations.size(), 3u);
	EXPECT_TRUE(mentions(violations, "tariff slot 2"));
	EXPECT_TRUE(mentions(violations, "ess.decay"));
	EXPECT_TRUE(mentions(violations, "packet_energy"));
}

TEST(ValidateScenario, ContiguousOverflowRejected) {
	Scenario s = test::single_load_scenario(3, 0, 4, true);
	EXPECT_TRUE(mentions(scenario_violations(s), "overflows the horizon"));
}

TEST(ValidateScenario, DerivedData) {
	Scenario s = test::single_load_scenario(2, 1, 3, false);
	s.tariff.grid_buy = {3.0, 2.0, 5.0, 2.0, 4.0, 6.0};
	const auto scn = validate_scenario(s);
	EXPECT_EQ(scn.prosumers(), 1);
	EXPECT_EQ(scn.loads()[0].window.first, 1);
	EXPECT_EQ(scn.loads()[0].window.last, 4);
	EXPECT_TRUE(scn.lowest_tier(1));
	EXPECT_TRUE(scn.lowest_tier(3));
	EXPECT_FALSE(scn.lowest_tier(0));
	EXPECT_EQ(scn.tariff_slot(2).grid_buy, 5.0);
}

TEST(LoadWindow, CappedAtHorizon) {
	LoadSpec load;
	load.packets_required = 4;
	load.request_slot = 17;
	load.latest_start = 23;
	EXPECT_EQ(load_window(load, 24).last, 23);
	EXPECT_EQ(load_window(load, 24).width(), 7);
}

TEST(ScenarioIo, MissingTariffNamed) {
	auto doc = scenario_to_json(test::single_load_scenario(1, 0, 0, false), AlgoConfig{});
	doc.erase("tariff");
	try {
		parse_scenario(doc);
		FAIL() << "expected ScenarioError";
	} catch (const ScenarioError& e) {
		EXPECT_TRUE(mentions(e.violations(), "tariff"));
	}
}

TEST(ScenarioIo, WrongTypeNamed) {
	auto doc = scenario_to_json(test::single_load_scenario(1, 0, 0, false), AlgoConfig{});
	doc["homes"][0]["loads"][0]["request_slot"] = "noon";
	try {
		parse_scenario(doc);
		FAIL() << "expected ScenarioError";
	} catch (const ScenarioError& e) {
		EXPECT_TRUE(mentions(e.violations(), "homes[0].loads[0].request_slot"));
	}
}

TEST(ScenarioIo, RoundTrip) {
	Rng rng(19);
	for (int trial = 0; trial < 50; ++trial) {
		Scenario s = test::random_scenario(rng);
		AlgoConfig cfg;
		cfg.seed = rng.next();
		cfg.population = 7;
		const auto loaded = parse_scenario(scenario_to_json(s, cfg));
		EXPECT_EQ(scenario_to_json(loaded.scenario, loaded.optimizer), scenario_to_json(s, cfg));
		EXPECT_EQ(loaded.optimizer.seed, cfg.seed);
	}
}

TEST(ScenarioIo, OptimizerSeedDefaultsToScenarioSeed) {
	auto doc = scenario_to_json(test::single_load_scenario(1, 0, 0, false), AlgoConfig{});
	doc.erase("optimizer");
	doc["seed_default"] = 99;
	EXPECT_EQ(parse_scenario(doc).optimizer.seed, 99u);
}

TEST(ScenarioIo, UnreadableFile) {
	EXPECT_THROW(read_scenario_file("/nonexistent/scenario.json"), ScenarioIoError);
}

TEST(ScenarioIo, ShippedFilesValidate) {
	EXPECT_NO_THROW(test::load_scenario("default.json"));
	const auto tiny = test::tiny_scenario_paths();
	EXPECT_EQ(tiny.size(), 5u);
	for (const auto& path : tiny) {
		const auto scn = validate_scenario(read_scenario_file(path).scenario);
		EXPECT_EQ(scn.num_homes(), 2) << path;
		EXPECT_EQ(scn.load_count(), 4u) << path;
		EXPECT_EQ(scn.horizon(), 6) << path;
	}
}

}  // namespace
}  // namespace les
