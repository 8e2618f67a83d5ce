#include "les/storage.hpp"

#include <algorithm>
#include <string>

namespace les {

namespace {
constexpr double kFlowTolerance = 1e-12;
}

double charge_headroom(const EssState& state, const EssSpec& spec) {
	return std::clamp(std::min(spec.max_charge_rate, spec.capacity - state.level), 0.0, spec.max_charge_rate);
}

double discharge_headroom(const EssState& state, const EssSpec& spec) {
	return std::clamp(std::min(spec.max_discharge_rate, state.level - spec.floor), 0.0, spec.max_discharge_rate);
}

EssState step_ess(const EssState& state, double charge_in, double discharge_out, const EssSpec& spec) {
	if (charge_in < 0.0 || discharge_out < 0.0) throw ContractViolation("battery flows must be non-negative");
	if (charge_in > 0.0 && discharge_out > 0.0) {
		throw ContractViolation("battery cannot charge and discharge in the same slot");
	}
	if (charge_in > charge_headroom(state, spec) + kFlowTolerance) {
		throw ContractViolation("charge " + std::to_string(charge_in) + " kWh exceeds headroom");
	}
	if (discharge_out > discharge_headroom(state, spec) + kFlowTolerance) {
		throw ContractViolation("discharge " + std::to_string(discharge_out) + " kWh exceeds headroom");
	}
	const double next = spec.decay * state.level + spec.charge_eff * charge_in - spec.discharge_eff * discharge_out;
	return {std::clamp(next, spec.floor, spec.capacity), charge_in > 0.0, discharge_out > 0.0};
}

double slot_degradation(const EssState& state_after_step, const EssSpec& spec) {
	return (state_after_step.charged ? spec.kappa_charge : 0.0) +
	       (state_after_step.discharged ? spec.kappa_discharge : 0.0);
}

double average_degradation(std::span<const std::vector<double>> per_home_slots, int prosumers) {
	double sum = 0.0;
	for (const auto& home : per_home_slots) {
		for (double cost : home) sum += cost;
	}
	return sum / prosumers;
}

}  // namespace les
