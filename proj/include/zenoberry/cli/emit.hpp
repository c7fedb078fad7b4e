#pragma once

#include "zenoberry/cli/config.hpp"
#include "zenoberry/cli/record.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace zenoberry::cli {

/// Output could not be produced or written (exit 4).
class IoError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

/// Serializes records that share one column set.
///
/// CSV: header row then one row per record, nulls as empty fields.
/// JSON: array of flat objects, nulls as null. Reals use 17 significant
/// digits, so identical records always give identical bytes.
///
/// Throws std::invalid_argument for an empty list or mismatched columns.
std::string emit(const std::vector<RunRecord>& records, Format format);

/// Writes to a temporary sibling and renames it into place, so a failed
/// write never leaves a partial file. Throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// results.csv -> results.summary.csv
std::filesystem::path summary_path(const std::filesystem::path& output);

} // namespace zenoberry::cli
