#include "zenoberry/zeno.hpp"

#include "zenoberry/errors.hpp"
#include "zenoberry/phase.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace zenoberry::zeno {

using su2::Complex;
using su2::Mat2;

void MeasurementPlan::validate(int min_steps) const
{
	if (steps < min_steps)
		throw Error(ErrorKind::InvalidArgument,
		            "measurement plan needs at least " + std::to_string(min_steps) + " steps");
	if (!std::isfinite(total_angle))
		throw Error(ErrorKind::InvalidArgument, "total angle must be finite");
}

void HamiltonianSpec::validate() const
{
	if (!std::isfinite(mu))
		throw Error(ErrorKind::InvalidArgument, "mu must be finite");
	if (!std::isfinite(total_time) || total_time < 0.0)
		throw Error(ErrorKind::InvalidArgument, "total time must be finite and non-negative");
}

std::vector<Spinor> family(const MeasurementPlan& plan)
{
	plan.validate();
	std::vector<Spinor> states;
	states.reserve(static_cast<std::size_t>(plan.steps) + 1);
	for (int k = 0; k <= plan.steps; ++k)
		states.push_back(su2::rotation_operator(plan.axis, plan.angle_at(k)) * Spinor::up());
	return states;
}

namespace {

struct Stepper
{
	std::optional<Mat2> propagator;
	// mu * b; the energy of a normalized state is mu b . r
	su2::Vec3 field;
};

void finish_phases(ZenoRunResult& result)
{
	result.survival_probability = result.final_state.norm_squared();
	result.total_phase = std::arg(su2::inner(Spinor::up(), result.final_state));
	result.geometric_phase = wrap_two_pi(result.total_phase - result.dynamical_phase);
	result.berry_phase = wrap_two_pi(-result.geometric_phase);
}

// The projected state is overlap * target; its normalized form is the target
// times the overlap's phase, which stays well defined however small the
// survival amplitude becomes.
TrajectoryPoint record(double time, const Spinor& target, Complex overlap)
{
	const Spinor s = (overlap / std::abs(overlap)) * target;
	return {time, s, su2::bloch_vector(target)};
}

ZenoRunResult evolve(const MeasurementPlan& plan, double total_time, const Stepper& stepper)
{
	const double dt = total_time / plan.steps;
	const bool has_field = stepper.propagator.has_value();

	ZenoRunResult result;
	result.trajectory.reserve(static_cast<std::size_t>(plan.steps) + 1);

	Spinor psi = Spinor::up();
	result.trajectory.push_back(record(0.0, psi, 1.0));
	double energy_sum = 0.0;

	for (int k = 1; k <= plan.steps; ++k) {
		if (has_field) {
			energy_sum += su2::dot(stepper.field, result.trajectory.back().bloch);
			psi = *stepper.propagator * psi;
		}
		const Spinor target = su2::rotation_operator(plan.axis, plan.angle_at(k)) * Spinor::up();
		const Complex overlap = su2::inner(target, psi);
		if (!(std::abs(overlap) >= kKilledThreshold))
			throw Error(ErrorKind::EvolutionKilled,
			            "projection " + std::to_string(k) + " annihilated the state",
			            static_cast<std::size_t>(k));
		psi = overlap * target;
		result.trajectory.push_back(record(k * dt, target, overlap));
	}

	result.final_state = psi;
	result.dynamical_phase = has_field ? -energy_sum * dt : 0.0;
	finish_phases(result);
	return result;
}

} // namespace

ZenoRunResult run_free(const MeasurementPlan& plan, double total_time)
{
	plan.validate();
	return evolve(plan, total_time, Stepper{});
}

Spinor continuum_state(const MeasurementPlan& plan)
{
	plan.validate();
	const double a = plan.total_angle;
	const Complex phase = std::polar(1.0, a * plan.axis.z());
	return phase * (su2::rotation_operator(plan.axis, a) * Spinor::up());
}

FiniteNPhase closed_form_finite_n(double cos_theta, int steps)
{
	if (steps < 3)
		throw Error(ErrorKind::UnsupportedStepCount, "closed forms need at least 3 steps");
	if (!(cos_theta >= -1.0 && cos_theta <= 1.0))
		throw Error(ErrorKind::InvalidArgument, "cos(theta) outside [-1, 1]");
	const double half_step = std::numbers::pi / steps;
	const double c = std::cos(half_step);
	const double s = std::sin(half_step);
	FiniteNPhase out;
	out.rho = std::pow(c * c + cos_theta * cos_theta * s * s, steps / 2.0);
	out.beta = std::numbers::pi - steps * std::atan(cos_theta * std::tan(half_step));
	return out;
}

ZenoRunResult run_hamiltonian(const MeasurementPlan& plan, const HamiltonianSpec& h)
{
	plan.validate(0);
	h.validate();
	const su2::Vec3 field = h.mu * h.axis.vec();

	if (plan.steps == 0) {
		ZenoRunResult result;
		result.trajectory.push_back(record(0.0, Spinor::up(), 1.0));
		result.final_state = su2::rotation_operator(h.axis, h.mu * h.total_time) * Spinor::up();
		result.trajectory.push_back(record(h.total_time, result.final_state, 1.0));
		// <H> is conserved along the undisturbed evolution.
		result.dynamical_phase = -su2::dot(field, UnitVec3::ez()) * h.total_time;
		finish_phases(result);
		return result;
	}

	const double dt = h.total_time / plan.steps;
	return evolve(plan, h.total_time, Stepper{su2::rotation_operator(h.axis, h.mu * dt), field});
}

double pancharatnam_phase(std::span<const Spinor> states)
{
	if (states.size() < 2)
		throw Error(ErrorKind::InvalidArgument, "Pancharatnam phase needs at least two states");
	Complex product{1.0, 0.0};
	for (std::size_t k = 0; k + 1 < states.size(); ++k) {
		const Complex overlap = su2::inner(states[k + 1], states[k]);
		if (!(std::abs(overlap) > 1e-12))
			throw Error(ErrorKind::UndefinedConnection,
			            "states " + std::to_string(k) + " and " + std::to_string(k + 1) + " are orthogonal", k);
		product *= overlap;
	}
	return wrap_two_pi(-std::arg(product));
}

} // namespace zenoberry::zeno
