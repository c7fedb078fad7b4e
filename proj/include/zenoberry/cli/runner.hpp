#pragma once

#include "zenoberry/cli/config.hpp"
#include "zenoberry/cli/record.hpp"
#include "zenoberry/errors.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace zenoberry::cli {

/// Engine failure annotated with the sweep point it came from (exit 3).
class RunError : public Error
{
public:
	RunError(const Error& cause, std::optional<std::size_t> sweep_index)
		: Error(cause), sweep_index_(sweep_index)
	{
	}
	std::optional<std::size_t> sweep_index() const noexcept { return sweep_index_; }

private:
	std::optional<std::size_t> sweep_index_;
};

struct RunOutput
{
	std::vector<RunRecord> records;
	/// Present for sweeps.
	std::optional<RunRecord> summary;
	/// CSV text; filled only when a trajectory dump was requested.
	std::string trajectory_csv;
};

/// Reads ZENOBERRY_THREADS (integer >= 1). Unset means hardware concurrency.
/// Throws ConfigError on malformed values.
unsigned threads_from_env();

/// One record for a non-sweep configuration.
RunRecord run_single(const ExperimentConfig& config, std::size_t index = 0);

/// One record per sweep point, in sweep order, plus the summary record.
/// Points are evaluated on up to `threads` workers; the result does not
/// depend on the thread count.
SweepResult run_sweep(const ExperimentConfig& config, unsigned threads);

/// Validates and dispatches. Throws ConfigError or RunError.
RunOutput run(const ExperimentConfig& config, unsigned threads);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace zenoberry::cli
