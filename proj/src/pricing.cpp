#include "les/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace les {

double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

double supply_demand_ratio(double local_supply, double demand) {
	if (local_supply < 0.0 || demand < 0.0 || std::isnan(local_supply) || std::isnan(demand)) {
		throw std::invalid_argument("supply and demand must be non-negative");
	}
	if (demand == 0.0) return local_supply > 0.0 ? kSurplusRatio : 0.0;
	return local_supply / demand;
}

// The literal Heaviside compositions for these prices do not reproduce the
// three regimes they are meant to describe (R = 0 buys at the grid price,
// R >= 1 sells at the grid price, prices float in between). The case-wise
// forms below reproduce all three; H only selects the surplus regime.

double internal_sell_price(TariffSlot tariff, double ratio) {
	if (heaviside(ratio - 1.0) == 1.0) return tariff.grid_sell;
	const double buy = tariff.grid_buy;
	const double sell = tariff.grid_sell;
	return sell * buy / ((buy - sell) * ratio + sell);
}

double internal_buy_price(TariffSlot tariff, double ratio) {
	if (heaviside(ratio - 1.0) == 1.0) return tariff.grid_sell;
	if (ratio <= 0.0) return tariff.grid_buy;
	return internal_sell_price(tariff, ratio) * ratio + tariff.grid_buy * (1.0 - ratio);
}

PriceQuote quote_prices(TariffSlot tariff, double local_supply, double demand) {
	const double ratio = supply_demand_ratio(local_supply, demand);
	if (local_supply == 0.0 && demand == 0.0) return {tariff.grid_buy, tariff.grid_sell, ratio};
	return {internal_buy_price(tariff, ratio), internal_sell_price(tariff, ratio), ratio};
}

}  // namespace les
