#include "zenoberry/errors.hpp"

namespace zenoberry {

std::string_view to_string(ErrorKind kind)
{
	switch (kind) {
	case ErrorKind::InvalidArgument: return "invalid-argument";
	case ErrorKind::DegenerateState: return "degenerate-state";
	case ErrorKind::EvolutionKilled: return "evolution-killed";
	case ErrorKind::UnsupportedStepCount: return "unsupported-step-count";
	case ErrorKind::DegeneratePolygon: return "degenerate-polygon";
	case ErrorKind::UndefinedConnection: return "undefined-connection";
	case ErrorKind::UnsupportedPolygon: return "unsupported-polygon";
	}
	return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> step)
	: std::runtime_error(message), kind_(kind), step_(step)
{
}

} // namespace zenoberry
