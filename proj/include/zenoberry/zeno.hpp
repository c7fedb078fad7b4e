#pragma once

#include "zenoberry/su2.hpp"

#include <span>
#include <vector>

namespace zenoberry::zeno {

using su2::Spinor;
using su2::UnitVec3;

/// Measurement family phi_k = exp(-i (a k / N) sigma.n) (1, 0), k = 0..N.
struct MeasurementPlan
{
	UnitVec3 axis = UnitVec3::ez();
	double total_angle = 0.0;
	int steps = 1;

	/// Throws invalid-argument unless steps >= min_steps and total_angle is finite.
	void validate(int min_steps = 1) const;
	double angle_at(int k) const { return total_angle * k / steps; }
};

/// H = mu sigma.b acting for total_time (hbar = 1).
struct HamiltonianSpec
{
	double mu = 0.0;
	UnitVec3 axis = UnitVec3::ez();
	double total_time = 1.0;

	void validate() const;
};

struct TrajectoryPoint
{
	double time = 0.0;
	Spinor state;
	UnitVec3 bloch = UnitVec3::ez();

	friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct ZenoRunResult
{
	/// Unnormalized; its squared norm is the survival probability.
	Spinor final_state;
	double survival_probability = 1.0;
	/// arg <phi_0|psi(T)>, in (-pi, pi].
	double total_phase = 0.0;
	/// -sum_k <psi_k|H|psi_k> dT over normalized post-projection states.
	double dynamical_phase = 0.0;
	/// total - dynamical, in [0, 2pi).
	double geometric_phase = 0.0;
	/// beta with psi(T) ~ exp(-i beta) exp(i dynamical) phi_0, i.e. the
	/// negated geometric phase reduced to [0, 2pi). Equals Omega/2 for a
	/// closed loop.
	double berry_phase = 0.0;
	/// Initial state followed by one entry per projection event.
	std::vector<TrajectoryPoint> trajectory;

	friend bool operator==(const ZenoRunResult&, const ZenoRunResult&) = default;
};

struct FiniteNPhase
{
	double rho = 1.0;
	double beta = 0.0;
};

/// Below this modulus a projection overlap is treated as orthogonal.
inline constexpr double kKilledThreshold = 1e-300;

std::vector<Spinor> family(const MeasurementPlan& plan);

/// Free evolution with projections at T_k = k T / N; `total_time` only
/// labels the trajectory.
ZenoRunResult run_free(const MeasurementPlan& plan, double total_time = 1.0);

/// N -> infinity limit exp(i a n_z) exp(-i a sigma.n) phi_0.
Spinor continuum_state(const MeasurementPlan& plan);

/// Amplitude and phase of psi(T) = rho exp(-i beta) phi_0 for a = pi.
FiniteNPhase closed_form_finite_n(double cos_theta, int steps);

/// Hamiltonian steps exp(-i mu dT sigma.b) interleaved with projections.
/// plan.steps == 0 gives the undisturbed evolution exp(-i mu T sigma.b) phi_0.
ZenoRunResult run_hamiltonian(const MeasurementPlan& plan, const HamiltonianSpec& h);

double solid_angle_cone(double cos_theta);
double solid_angle_polygon_formula(double cos_theta, int steps);

/// Signed solid angle of a closed spherical polygon with geodesic edges
/// (the last vertex connects back to the first). Reversing the vertex order
/// flips the sign. Defined modulo 4pi; the result lies in (-4pi, 4pi).
double solid_angle_spherical_polygon(std::span<const UnitVec3> vertices);

/// -arg prod_k <phi_{k+1}|phi_k>, reduced to [0, 2pi). Close the loop by
/// repeating the first state (up to phase) at the end.
double pancharatnam_phase(std::span<const Spinor> states);

} // namespace zenoberry::zeno
