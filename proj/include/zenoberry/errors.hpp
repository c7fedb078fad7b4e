#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zenoberry {

enum class ErrorKind {
	InvalidArgument,
	DegenerateState,
	EvolutionKilled,
	UnsupportedStepCount,
	DegeneratePolygon,
	UndefinedConnection,
	UnsupportedPolygon,
};

/// Stable machine-readable name, e.g. "evolution-killed".
std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engines. `step()` carries the projection or
/// mirror index when the failure happened inside a chain.
class Error : public std::runtime_error
{
public:
	Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> step = std::nullopt);

	ErrorKind kind() const noexcept { return kind_; }
	std::optional<std::size_t> step() const noexcept { return step_; }

private:
	ErrorKind kind_;
	std::optional<std::size_t> step_;
};

} // namespace zenoberry
