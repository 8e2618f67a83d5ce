#pragma once

#include <limits>
#include <vector>

namespace les {

// Grid-side prices in cents/kWh, one entry per slot.
struct GridTariff {
	std::vector<double> grid_buy;
	std::vector<double> grid_sell;
	// Price deficit energy at the internal buy price and surplus at the internal
	// sell price instead of the literal crossed assignment.
	bool swap_transaction_prices = false;
};

struct TariffSlot {
	double grid_buy = 0.0;
	double grid_sell = 0.0;
};

struct PriceQuote {
	double internal_buy = 0.0;
	double internal_sell = 0.0;
	double ratio = 0.0;
};

/// Ratio value returned when there is local supply but no demand.
inline constexpr double kSurplusRatio = std::numeric_limits<double>::infinity();

/// Unit step with H(0) = 1.
double heaviside(double x);

/// local_supply / demand. Infinite when demand is zero and supply positive, zero when both are zero.
/// Throws std::invalid_argument on negative input.
double supply_demand_ratio(double local_supply, double demand);

/// Internal (ESP) selling price for a given supply/demand ratio.
///
/// For 0 <= R < 1 the price follows the supply-demand-ratio curve
///   sell * buy / ((buy - sell) * R + sell),
/// which equals the grid buy price at R = 0 and falls monotonically to the
/// grid sell price at R = 1. For R >= 1 the community is in surplus and the
/// price is the grid sell price.
double internal_sell_price(TariffSlot tariff, double ratio);

/// Internal (ESP) buying price: grid buy price at R = 0, the blend
/// internal_sell(R) * R + buy * (1 - R) for 0 < R < 1, grid sell price for R >= 1.
double internal_buy_price(TariffSlot tariff, double ratio);

/// Quote for a slot. A slot with neither supply nor demand quotes the raw grid prices.
PriceQuote quote_prices(TariffSlot tariff, double local_supply, double demand);

}  // namespace les
