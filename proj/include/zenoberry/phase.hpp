#pragma once

#include <cmath>
#include <numbers>

namespace zenoberry {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2pi). Results within 1e-12 of 2pi are reported
/// as 0 so that roundoff on a vanishing phase does not flip it to 2pi.
inline double wrap_two_pi(double angle)
{
	double r = std::fmod(angle, kTwoPi);
	if (r < 0.0)
		r += kTwoPi;
	if (r >= kTwoPi - 1e-12)
		r = 0.0;
	return r + 0.0;
}

/// Shortest distance between two angles on the circle, in [0, pi].
inline double phase_distance(double a, double b)
{
	return std::abs(std::remainder(a - b, kTwoPi));
}

} // namespace zenoberry
