#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace les {

struct EssSpec {
	double capacity = 5.0;  // kWh
	double floor = 0.0;     // kWh
	double decay = 0.8;     // fraction retained per slot
	double charge_eff = 0.7;
	double discharge_eff = 0.7;
	double max_charge_rate = 2.0;     // kWh per slot
	double max_discharge_rate = 2.0;  // kWh per slot
	double kappa_charge = 0.5;        // cents per charging event
	double kappa_discharge = 0.5;     // cents per discharging event
	double initial_level = 0.0;
	// Allow charging from the grid in the cheapest tariff slots.
	bool grid_charging = true;
};

struct EssState {
	double level = 0.0;
	bool charged = false;
	bool discharged = false;
};

class ContractViolation : public std::logic_error {
public:
	using std::logic_error::logic_error;
};

double charge_headroom(const EssState& state, const EssSpec& spec);
double discharge_headroom(const EssState& state, const EssSpec& spec);

/// Advances the battery one slot: next = decay * level + charge_eff * charge_in - discharge_eff * discharge_out,
/// clamped to [floor, capacity]. Throws ContractViolation on simultaneous charge and discharge or on
/// flows beyond the current headroom.
EssState step_ess(const EssState& state, double charge_in, double discharge_out, const EssSpec& spec);

/// Degradation cost of the events recorded in a stepped state, in cents.
double slot_degradation(const EssState& state_after_step, const EssSpec& spec);

/// (1/J) times the sum of per-home per-slot degradation costs.
double average_degradation(std::span<const std::vector<double>> per_home_slots, int prosumers);

}  // namespace les
