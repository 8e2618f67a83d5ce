#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace les::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kIoError = 2;

int cmd_validate(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);

struct RunOptions {
	std::filesystem::path scenario;
	std::string algo = "crbpso";
	std::optional<std::uint64_t> seed;
	std::filesystem::path out_dir = "out";
	std::optional<int> population;
	std::optional<int> iterations;
	bool replan = false;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct SweepSpec {
	std::filesystem::path scenario;
	std::vector<std::string> algos{"unscheduled", "ga", "bpso", "crbpso"};
	std::vector<std::uint64_t> seeds;
	std::filesystem::path out_dir = "sweep";
	std::optional<int> population;
	std::optional<int> iterations;
};

/// "30" means seeds 1..30; "3,7,11" lists them.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

int cmd_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err);

int cmd_oracle(const std::filesystem::path& scenario, std::uint64_t max_space, std::ostream& out, std::ostream& err);

}  // namespace les::cli
