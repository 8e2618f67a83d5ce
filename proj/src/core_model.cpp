#include "les/core_model.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace les {

ScheduleMatrix::ScheduleMatrix(std::size_t load_count, int horizon)
    : loads_(load_count), horizon_(horizon), bits_(load_count * static_cast<std::size_t>(horizon), 0) {}

ScheduleMatrix::ScheduleMatrix(std::size_t load_count, int horizon, std::vector<std::uint8_t> bits)
    : loads_(load_count), horizon_(horizon), bits_(std::move(bits)) {
	if (bits_.size() != loads_ * static_cast<std::size_t>(horizon_)) {
		throw DimensionMismatch("schedule bit count does not match loads x horizon");
	}
}

ScheduleMatrix ScheduleMatrix::for_scenario(const ValidatedScenario& scn) {
	return ScheduleMatrix(scn.load_count(), scn.horizon());
}

std::span<const std::uint8_t> ScheduleMatrix::row(std::size_t load) const {
	return std::span<const std::uint8_t>(bits_).subspan(offset(load, 0), static_cast<std::size_t>(horizon_));
}

std::span<std::uint8_t> ScheduleMatrix::row(std::size_t load) {
	return std::span<std::uint8_t>(bits_).subspan(offset(load, 0), static_cast<std::size_t>(horizon_));
}

bool ScheduleMatrix::matches(const ValidatedScenario& scn) const {
	return loads_ == scn.load_count() && horizon_ == scn.horizon() &&
	       bits_.size() == loads_ * static_cast<std::size_t>(horizon_);
}

double pv_output(const PvSpec& pv, double irradiance, double temp, double slot_duration) {
	const double correction = 1.0 - 0.005 * (temp - 25.0);
	const double energy = pv.efficiency * pv.area * irradiance * correction * slot_duration;
	return std::min(pv.max_output, std::max(0.0, energy));
}

namespace {

void require_dimensions(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	if (!schedule.matches(scn)) {
		throw DimensionMismatch("schedule is " + std::to_string(schedule.load_count()) + "x" +
		                        std::to_string(schedule.horizon()) + ", scenario needs " +
		                        std::to_string(scn.load_count()) + "x" + std::to_string(scn.horizon()));
	}
}

}  // namespace

double total_demand(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	require_dimensions(schedule, scn);
	double total = 0.0;
	const auto loads = scn.loads();
	for (std::size_t i = 0; i < loads.size(); ++i) {
		const auto row = schedule.row(i);
		const auto packets = std::count(row.begin(), row.end(), std::uint8_t{1});
		total += static_cast<double>(packets) * loads[i].spec.packet_energy;
	}
	return total;
}

double load_delay(const LoadSpec& load, int actual_start) {
	if (actual_start < load.request_slot || actual_start > load.latest_start) {
		throw ContractViolation("load '" + load.name + "' start " + std::to_string(actual_start) +
		                        " outside [" + std::to_string(load.request_slot) + ", " +
		                        std::to_string(load.latest_start) + "]");
	}
	if (load.latest_start == load.request_slot) return 0.0;
	return static_cast<double>(actual_start - load.request_slot) /
	       static_cast<double>(load.latest_start - load.request_slot);
}

double placed_load_delay(const FlatLoad& load, std::span<const std::uint8_t> row) {
	const int span = load.spec.latest_start - load.spec.request_slot;
	int k = 0;
	double sum = 0.0;
	for (int t = load.window.first; t <= load.window.last; ++t) {
		if (row[static_cast<std::size_t>(t)] == 0) continue;
		if (span > 0) {
			const double late = static_cast<double>(t - (load.spec.request_slot + k)) / span;
			sum += std::clamp(late, 0.0, 1.0);
		}
		++k;
	}
	if (k == 0) return 1.0;
	return sum / k;
}

double average_delay(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	require_dimensions(schedule, scn);
	double sum = 0.0;
	const auto loads = scn.loads();
	for (std::size_t i = 0; i < loads.size(); ++i) sum += placed_load_delay(loads[i], schedule.row(i));
	return sum / scn.prosumers();
}

double average_pv(const ValidatedScenario& scn) {
	double sum = 0.0;
	for (int b = 0; b < scn.num_homes(); ++b) {
		for (double e : scn.pv_series(b)) sum += e;
	}
	return sum / scn.prosumers();
}

double schedule_violation(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	require_dimensions(schedule, scn);
	double violation = 0.0;
	const auto loads = scn.loads();
	for (std::size_t i = 0; i < loads.size(); ++i) {
		const FlatLoad& load = loads[i];
		const auto row = schedule.row(i);
		int inside = 0;
		int runs = 0;
		bool previous = false;
		for (int t = 0; t < schedule.horizon(); ++t) {
			const bool on = row[static_cast<std::size_t>(t)] != 0;
			if (on && !load.window.contains(t)) violation += 1.0;
			if (on && load.window.contains(t)) {
				++inside;
				if (!previous) ++runs;
			}
			previous = on && load.window.contains(t);
		}
		violation += std::abs(inside - load.spec.packets_required);
		if (load.spec.contiguous && runs > 1) violation += runs - 1;
	}
	return violation;
}

bool is_feasible(const ScheduleMatrix& schedule, const ValidatedScenario& scn) {
	return schedule_violation(schedule, scn) == 0.0;
}

ScheduleMatrix unscheduled_schedule(const ValidatedScenario& scn) {
	auto schedule = ScheduleMatrix::for_scenario(scn);
	const auto loads = scn.loads();
	for (std::size_t i = 0; i < loads.size(); ++i) {
		for (int k = 0; k < loads[i].spec.packets_required; ++k) {
			schedule.set(i, loads[i].spec.request_slot + k);
		}
	}
	return schedule;
}

}  // namespace les
