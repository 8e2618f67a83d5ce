#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace les {

/// splitmix64 finalizer; used to derive independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x);

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
	return mix_seed(master ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
	explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

	std::uint64_t next() { return engine_(); }

	// Uniform in [0, 1) with 53 bits of resolution.
	double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

	double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

	std::size_t below(std::size_t n) {
		auto k = static_cast<std::size_t>(unit() * static_cast<double>(n));
		return k < n ? k : n - 1;
	}

	bool bernoulli(double p) { return unit() < p; }

private:
	std::mt19937_64 engine_;
};

}  // namespace les
