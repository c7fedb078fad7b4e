#include "zenoberry/cli/runner.hpp"

#include "zenoberry/phase.hpp"
#include "zenoberry/photon.hpp"
#include "zenoberry/zeno.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

namespace zenoberry::cli {

namespace {

using su2::Complex;
using su2::Spinor;

constexpr double kPi = std::numbers::pi;

bool is_half_turn(double angle)
{
	return std::abs(angle - kPi) <= 1e-12;
}

std::string format_real(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
	return buf;
}

void spin_inputs(RunRecord& r, const ExperimentConfig& c, Mode mode, std::size_t index)
{
	const auto& p = *c.plan;
	r.inputs["mode"] = std::string(to_string(mode));
	r.inputs["index"] = static_cast<std::int64_t>(index);
	r.inputs["axis_n_x"] = real(p.axis.x());
	r.inputs["axis_n_y"] = real(p.axis.y());
	r.inputs["axis_n_z"] = real(p.axis.z());
	r.inputs["steps"] = static_cast<std::int64_t>(p.steps);
	r.inputs["total_angle"] = real(p.total_angle);
}

void spin_outputs(RunRecord& r, const zeno::ZenoRunResult& res)
{
	r.outputs["beta"] = real(res.berry_phase);
	r.outputs["dynamical_phase"] = real(res.dynamical_phase);
	r.outputs["final_re0"] = real(res.final_state.c0.real());
	r.outputs["final_im0"] = real(res.final_state.c0.imag());
	r.outputs["final_re1"] = real(res.final_state.c1.real());
	r.outputs["final_im1"] = real(res.final_state.c1.imag());
	r.outputs["geometric_phase"] = real(res.geometric_phase);
	r.outputs["survival_probability"] = real(res.survival_probability);
	r.outputs["total_phase"] = real(res.total_phase);
}

RunRecord spin_free_record(const ExperimentConfig& c, std::size_t index)
{
	const zeno::MeasurementPlan& plan = *c.plan;
	RunRecord r;
	spin_inputs(r, c, Mode::SpinFree, index);
	const zeno::ZenoRunResult res = zeno::run_free(plan);
	spin_outputs(r, res);

	const double nz = plan.axis.z();
	const double step_angle = plan.total_angle / plan.steps;
	const int n = plan.steps;
	r.outputs["state_error_continuum"] = real(su2::distance(res.final_state, zeno::continuum_state(plan)));

	// psi(T) = (cos(a/N) + i n_z sin(a/N))^N phi_N
	const Spinor phi_n = su2::rotation_operator(plan.axis, plan.total_angle) * Spinor::up();
	const Complex overlap{std::cos(step_angle), nz * std::sin(step_angle)};
	const Spinor structural = std::pow(overlap, n) * phi_n;
	r.residuals["residual_finite_n_state"] = real(su2::distance(res.final_state, structural));
	const double survival = std::pow(std::norm(overlap), n);
	r.residuals["residual_survival"] = real(std::abs(res.survival_probability - survival));

	const bool closed = is_half_turn(plan.total_angle) && n >= 3;
	double pancharatnam = 0.0;
	zeno::FiniteNPhase expected;
	if (closed) {
		auto loop = zeno::family(plan);
		loop.push_back(Spinor::up());
		pancharatnam = zeno::pancharatnam_phase(loop);
		expected = zeno::closed_form_finite_n(nz, n);
	}
	r.outputs["pancharatnam_phase"] = optional_real(closed, pancharatnam);
	if (closed) {
		// beta_N spans the closed interval [0, 2pi] as cos(theta) runs over [-1, 1];
		// report the branch continuous in cos(theta) instead of the wrapped value.
		r.outputs["beta"] = real(expected.beta + std::remainder(res.berry_phase - expected.beta, kTwoPi));
	}
	r.residuals["residual_rho"] = optional_real(closed, std::abs(std::sqrt(res.survival_probability) - expected.rho));
	r.residuals["residual_beta"] = optional_real(closed, phase_distance(res.berry_phase, expected.beta));
	r.residuals["residual_pancharatnam"] = optional_real(closed, phase_distance(pancharatnam, res.berry_phase));
	return r;
}

RunRecord spin_hamiltonian_record(const ExperimentConfig& c, std::size_t index)
{
	const zeno::MeasurementPlan& plan = *c.plan;
	const zeno::HamiltonianSpec& h = *c.hamiltonian;
	RunRecord r;
	spin_inputs(r, c, Mode::SpinHamiltonian, index);
	r.inputs["axis_b_x"] = real(h.axis.x());
	r.inputs["axis_b_y"] = real(h.axis.y());
	r.inputs["axis_b_z"] = real(h.axis.z());
	r.inputs["mu"] = real(h.mu);
	r.inputs["time"] = real(h.total_time);

	const zeno::ZenoRunResult res = zeno::run_hamiltonian(plan, h);
	spin_outputs(r, res);

	// a = pi: psi(T) -> exp(-i Omega/2) exp(-i mu T (b.n) n_z) phi_0
	const bool closed = is_half_turn(plan.total_angle) && plan.steps >= 1;
	const double nz = plan.axis.z();
	const double dyn = -h.mu * h.total_time * su2::dot(h.axis, plan.axis) * nz;
	const double geo = wrap_two_pi(-zeno::solid_angle_cone(nz) / 2.0);
	const Spinor limit = std::polar(1.0, geo + dyn) * Spinor::up();
	r.outputs["dynamical_phase_limit"] = optional_real(closed, dyn);
	r.outputs["geometric_phase_limit"] = optional_real(closed, geo);
	r.outputs["state_error_continuum"] = optional_real(closed, su2::distance(res.final_state, limit));
	r.residuals["residual_dynamical_phase"] = optional_real(closed, std::abs(res.dynamical_phase - dyn));
	r.residuals["residual_geometric_phase"] = optional_real(closed, phase_distance(res.geometric_phase, geo));
	return r;
}

struct PhotonRun
{
	RunRecord record;
	std::vector<photon::PhotonState> trace;
};

PhotonRun photon_run(const ExperimentConfig& c, std::size_t index)
{
	const PhotonSetup& setup = *c.photon;
	PhotonRun out;
	RunRecord& r = out.record;
	r.inputs["mode"] = std::string(to_string(Mode::PhotonPolygon));
	r.inputs["index"] = static_cast<std::int64_t>(index);
	r.inputs["momentum_polar_angle"] = real(setup.momentum_polar_angle);
	r.inputs["polarization_angle"] = real(setup.polarization_angle);
	r.inputs["polygon_sides"] = static_cast<std::int64_t>(setup.sides);

	const auto polygon = photon::MirrorPolygon::regular(setup.sides);
	const auto initial = photon::PhotonState::linear(setup.momentum_polar_angle, setup.polarization_angle);
	std::vector<photon::Diagnostic> diagnostics;
	out.trace = photon::trace_polygon(initial, polygon, &diagnostics);
	const photon::PhotonState& last = out.trace.back();

	const bool even = setup.sides % 2 == 0;
	r.outputs["closed_loop"] = static_cast<std::int64_t>(even ? 1 : 0);
	const char* names[] = {"x", "y", "z"};
	for (std::size_t i = 0; i < 3; ++i) {
		r.outputs[std::string("final_p") + names[i] + "_re"] = real(last.polarization.v[i].real());
		r.outputs[std::string("final_p") + names[i] + "_im"] = real(last.polarization.v[i].imag());
	}
	r.outputs["helicity_parity_final"] = static_cast<std::int64_t>(last.helicity_parity);
	r.outputs["max_abs_change"] = real(photon::max_abs_diff(last.polarization, initial.polarization));
	r.outputs["unphysical_incidences"] = static_cast<std::int64_t>(diagnostics.size());

	const auto expected = photon::closed_form_final(polygon) * initial.polarization;
	r.residuals["residual_closed_form"] = real(photon::max_abs_diff(last.polarization, expected));

	bool loop_defined = false;
	double loop = 0.0;
	if (even) {
		try {
			loop = photon::polarization_loop_solid_angle(out.trace);
			loop_defined = true;
		} catch (const Error& e) {
			// In-plane polarization makes consecutive tips antipodal.
			if (e.kind() != ErrorKind::DegeneratePolygon)
				throw;
		}
	}
	r.outputs["loop_solid_angle"] = optional_real(loop_defined, loop);
	r.residuals["residual_loop_solid_angle"] = optional_real(loop_defined, std::abs(std::abs(loop) - kTwoPi));
	return out;
}

RunRecord dispatch(const ExperimentConfig& c, Mode mode, std::size_t index)
{
	switch (mode) {
	case Mode::SpinFree: return spin_free_record(c, index);
	case Mode::SpinHamiltonian: return spin_hamiltonian_record(c, index);
	case Mode::PhotonPolygon: return photon_run(c, index).record;
	case Mode::Sweep: break;
	}
	throw ConfigError("nested sweeps are not supported");
}

RunRecord timed(const ExperimentConfig& c, Mode mode, std::size_t index)
{
	const auto start = std::chrono::steady_clock::now();
	RunRecord r = dispatch(c, mode, index);
	if (c.output.record_timing)
		r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return r;
}

ExperimentConfig point_config(const ExperimentConfig& base, double value)
{
	ExperimentConfig c = base;
	c.mode = base.point_mode();
	c.sweep.reset();
	const std::string& name = base.sweep->parameter;
	if (name == "steps") {
		c.plan->steps = static_cast<int>(value);
	} else if (name == "cos_theta") {
		const auto& axis = c.plan->axis;
		const double azimuth = (axis.x() == 0.0 && axis.y() == 0.0) ? 0.0 : std::atan2(axis.y(), axis.x());
		const double s = std::sqrt(std::max(0.0, 1.0 - value * value));
		c.plan->axis = su2::UnitVec3::normalize({s * std::cos(azimuth), s * std::sin(azimuth), value});
	} else if (name == "mu") {
		c.hamiltonian->mu = value;
	} else if (name == "polygon_sides") {
		c.photon->sides = static_cast<int>(value);
	}
	return c;
}

std::string spin_trajectory_csv(const zeno::ZenoRunResult& res)
{
	std::ostringstream os;
	os << "k,time,bloch_x,bloch_y,bloch_z\n";
	for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
		const auto& p = res.trajectory[k];
		os << k << ',' << format_real(p.time) << ',' << format_real(p.bloch.x()) << ',' << format_real(p.bloch.y())
		   << ',' << format_real(p.bloch.z()) << '\n';
	}
	return os.str();
}

std::string photon_trajectory_csv(const std::vector<photon::PhotonState>& trace)
{
	std::ostringstream os;
	os << "k,px_re,px_im,py_re,py_im,pz_re,pz_im,helicity_parity\n";
	for (std::size_t k = 0; k < trace.size(); ++k) {
		os << k;
		for (const Complex& v : trace[k].polarization.v)
			os << ',' << format_real(v.real()) << ',' << format_real(v.imag());
		os << ',' << trace[k].helicity_parity << '\n';
	}
	return os.str();
}

RunRecord sweep_summary(const ExperimentConfig& c, const std::vector<RunRecord>& records)
{
	const std::string& name = c.sweep->parameter;
	RunRecord s;
	s.inputs["parameter"] = name;
	s.inputs["points"] = static_cast<std::int64_t>(records.size());

	double worst = 0.0;
	for (const RunRecord& r : records)
		for (const auto& [key, value] : r.residuals)
			if (const auto* d = std::get_if<double>(&value))
				worst = std::max(worst, *d);
	s.residuals["max_residual"] = real(worst);

	if (name == "steps") {
		std::vector<double> xs, ys;
		for (const RunRecord& r : records) {
			const double e = r.number("state_error_continuum");
			if (std::isfinite(e) && e > 0.0) {
				xs.push_back(r.number("steps"));
				ys.push_back(e);
			}
		}
		const bool fit = xs.size() >= 2 && xs.size() == records.size();
		s.outputs["convergence_slope"] = optional_real(fit, fit ? log_log_slope(xs, ys) : 0.0);
	} else if (name == "cos_theta") {
		bool monotone = true;
		for (std::size_t i = 1; i < records.size(); ++i)
			monotone = monotone && records[i].number("beta") <= records[i - 1].number("beta");
		s.outputs["beta_monotone_decreasing"] = static_cast<std::int64_t>(monotone ? 1 : 0);
	} else if (name == "polygon_sides") {
		bool alternating = true;
		for (const RunRecord& r : records) {
			const auto sides = static_cast<std::int64_t>(r.number("polygon_sides"));
			const auto closed = static_cast<std::int64_t>(r.number("closed_loop"));
			alternating = alternating && closed == (sides % 2 == 0 ? 1 : 0);
		}
		s.outputs["alternating_pattern"] = static_cast<std::int64_t>(alternating ? 1 : 0);
	}
	return s;
}

} // namespace

unsigned threads_from_env()
{
	const char* raw = std::getenv("ZENOBERRY_THREADS");
	if (raw == nullptr || *raw == '\0')
		return std::max(1u, std::thread::hardware_concurrency());
	char* end = nullptr;
	const long v = std::strtol(raw, &end, 10);
	if (*end != '\0' || v < 1 || v > 4096)
		throw ConfigError("ZENOBERRY_THREADS must be an integer >= 1");
	return static_cast<unsigned>(v);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
	const std::size_t n = x.size();
	double mx = 0.0, my = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		mx += std::log(x[i]);
		my += std::log(y[i]);
	}
	mx /= static_cast<double>(n);
	my /= static_cast<double>(n);
	double sxy = 0.0, sxx = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		const double dx = std::log(x[i]) - mx;
		sxy += dx * (std::log(y[i]) - my);
		sxx += dx * dx;
	}
	return sxy / sxx;
}

RunRecord run_single(const ExperimentConfig& config, std::size_t index)
{
	try {
		return timed(config, config.mode, index);
	} catch (const RunError&) {
		throw;
	} catch (const Error& e) {
		throw RunError(e, std::nullopt);
	}
}

SweepResult run_sweep(const ExperimentConfig& config, unsigned threads)
{
	const std::vector<double> points = sweep_points(*config.sweep);
	const Mode mode = config.point_mode();
	std::vector<std::optional<RunRecord>> slots(points.size());
	std::vector<std::exception_ptr> failures(points.size());
	std::atomic<std::size_t> next{0};

	auto worker = [&] {
		for (std::size_t i = next++; i < points.size(); i = next++) {
			try {
				slots[i] = timed(point_config(config, points[i]), mode, i);
			} catch (...) {
				failures[i] = std::current_exception();
			}
		}
	};

	const unsigned workers = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(points.size()));
	if (workers == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		pool.reserve(workers);
		for (unsigned t = 0; t < workers; ++t)
			pool.emplace_back(worker);
	}

	SweepResult result;
	result.records.reserve(points.size());
	for (std::size_t i = 0; i < points.size(); ++i) {
		if (failures[i]) {
			try {
				std::rethrow_exception(failures[i]);
			} catch (const Error& e) {
				throw RunError(e, i);
			}
		}
		result.records.push_back(std::move(*slots[i]));
	}
	result.summary = sweep_summary(config, result.records);
	return result;
}

RunOutput run(const ExperimentConfig& config, unsigned threads)
{
	config.validate();
	RunOutput out;
	if (config.mode == Mode::Sweep) {
		SweepResult sweep = run_sweep(config, threads);
		out.records = std::move(sweep.records);
		out.summary = std::move(sweep.summary);
		return out;
	}

	out.records.push_back(run_single(config));
	if (!config.output.trajectory_path.empty()) {
		try {
			if (config.mode == Mode::PhotonPolygon)
				out.trajectory_csv = photon_trajectory_csv(photon_run(config, 0).trace);
			else if (config.mode == Mode::SpinFree)
				out.trajectory_csv = spin_trajectory_csv(zeno::run_free(*config.plan));
			else
				out.trajectory_csv = spin_trajectory_csv(zeno::run_hamiltonian(*config.plan, *config.hamiltonian));
		} catch (const Error& e) {
			throw RunError(e, std::nullopt);
		}
	}
	return out;
}

} // namespace zenoberry::cli
