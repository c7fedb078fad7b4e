#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace zenoberry::cli {

/// null, integer, real or text.
using Value = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Flat key/value record. Column order on output is inputs, outputs and
/// residuals (each alphabetical) followed by wall_time_seconds.
struct RunRecord
{
	std::map<std::string, Value> inputs;
	std::map<std::string, Value> outputs;
	std::map<std::string, Value> residuals;
	double wall_time_seconds = 0.0;

	std::vector<std::string> columns() const;
	/// Value by column name; throws std::out_of_range for unknown keys.
	const Value& at(const std::string& key) const;
	double number(const std::string& key) const;
};

/// Real value, mapping NaN to null and -0 to 0.
Value real(double v);
/// Real value that is null when absent.
Value optional_real(bool present, double v);

/// Summary of a sweep: the per-point records plus one flat summary record.
struct SweepResult
{
	std::vector<RunRecord> records;
	RunRecord summary;
};

} // namespace zenoberry::cli
