#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "les/scenario.hpp"

namespace les {

// Binary packet placement over (load, slot). Loads are addressed by their flat
// index in ValidatedScenario::loads(); a set bit delivers one packet of that
// load in that slot.
class ScheduleMatrix {
public:
	ScheduleMatrix() = default;
	ScheduleMatrix(std::size_t load_count, int horizon);
	ScheduleMatrix(std::size_t load_count, int horizon, std::vector<std::uint8_t> bits);

	static ScheduleMatrix for_scenario(const ValidatedScenario& scn);

	bool test(std::size_t load, int slot) const { return bits_[offset(load, slot)] != 0; }
	void set(std::size_t load, int slot, bool on = true) { bits_[offset(load, slot)] = on ? 1 : 0; }

	std::span<const std::uint8_t> row(std::size_t load) const;
	std::span<std::uint8_t> row(std::size_t load);

	const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
	std::vector<std::uint8_t>& bits() noexcept { return bits_; }

	std::size_t load_count() const noexcept { return loads_; }
	int horizon() const noexcept { return horizon_; }
	std::size_t size() const noexcept { return bits_.size(); }

	bool matches(const ValidatedScenario& scn) const;

	friend bool operator==(const ScheduleMatrix&, const ScheduleMatrix&) = default;

private:
	std::size_t offset(std::size_t load, int slot) const {
		return load * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(slot);
	}

	std::size_t loads_ = 0;
	int horizon_ = 0;
	std::vector<std::uint8_t> bits_;
};

class DimensionMismatch : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// PV energy for one slot: efficiency * area * irradiance * (1 - 0.005 * (temp - 25)) * slot_duration,
/// clamped into [0, max_output].
double pv_output(const PvSpec& pv, double irradiance, double temp, double slot_duration);

/// Total scheduled packet energy over all homes, loads and slots (kWh).
double total_demand(const ScheduleMatrix& schedule, const ValidatedScenario& scn);

/// Normalized start delay (actual - request) / (latest - request), in [0, 1].
/// Zero-width windows yield 0. Throws ContractViolation when actual_start is outside the window.
double load_delay(const LoadSpec& load, int actual_start);

/// Delay of one load as placed in a schedule row.
///
/// Packet k (in slot order) is late by (slot_k - (request + k)) / (latest - request). The load's delay is
/// the mean over its packets, which reduces to load_delay() of the start slot for a contiguous run.
/// Only in-window packets count; a load with none is treated as fully delayed.
double placed_load_delay(const FlatLoad& load, std::span<const std::uint8_t> row);

/// (1/J) times the sum of per-load delays.
double average_delay(const ScheduleMatrix& schedule, const ValidatedScenario& scn);

/// (1/J) times the harvested PV energy of all homes over the horizon (kWh).
double average_pv(const ValidatedScenario& scn);

/// Packet count and window violations of a schedule; 0 for a feasible one.
/// Each stray bit, missing or extra packet and broken contiguous run counts as one unit.
double schedule_violation(const ScheduleMatrix& schedule, const ValidatedScenario& scn);

/// True when every load carries exactly its packets, all within its window, and contiguous loads form one run.
bool is_feasible(const ScheduleMatrix& schedule, const ValidatedScenario& scn);

/// Every load starts at its request slot with consecutive packets.
ScheduleMatrix unscheduled_schedule(const ValidatedScenario& scn);

}  // namespace les
