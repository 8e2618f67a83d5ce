#include "les/parallel.hpp"

#include <cstdlib>
#include <string>

namespace les {

unsigned configured_threads() {
	unsigned threads = 0;
	if (const char* env = std::getenv("CRBPSO_LES_THREADS")) {
		try {
			threads = static_cast<unsigned>(std::stoul(env));
		} catch (const std::exception&) {
			threads = 0;
		}
	}
	if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
	return threads;
}

unsigned resolve_threads(unsigned requested) { return requested == 0 ? configured_threads() : requested; }

}  // namespace les
