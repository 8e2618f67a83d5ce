#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace les {

/// Worker count from CRBPSO_LES_THREADS (0 or unset = hardware concurrency).
unsigned configured_threads();

/// Resolves a requested thread count; 0 defers to configured_threads().
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for i in [0, n) over static contiguous chunks. Callers must make fn(i) touch only
/// slot i of any shared output so results do not depend on the worker count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
	const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
	if (workers <= 1) {
		for (std::size_t i = 0; i < n; ++i) fn(i);
		return;
	}
	std::vector<std::jthread> pool;
	pool.reserve(workers);
	const std::size_t chunk = (n + workers - 1) / workers;
	for (std::size_t w = 0; w < workers; ++w) {
		const std::size_t begin = w * chunk;
		const std::size_t end = std::min(n, begin + chunk);
		if (begin >= end) break;
		pool.emplace_back([&fn, begin, end] {
			for (std::size_t i = begin; i < end; ++i) fn(i);
		});
	}
}

}  // namespace les
