#include "doctest.h"
#include "test_support.hpp"

#include "zenoberry/errors.hpp"
#include "zenoberry/phase.hpp"
#include "zenoberry/zeno.hpp"

#include <vector>

using namespace zenoberry;
using namespace zenoberry::zeno;
using su2::Complex;
using su2::Mat2;
using zenoberry::testing::kPi;

namespace {

MeasurementPlan make_plan(UnitVec3 axis, double angle, int steps)
{
	MeasurementPlan p;
	p.axis = axis;
	p.total_angle = angle;
	p.steps = steps;
	return p;
}

// Oracle: explicit projector matrices |phi_k><phi_k| multiplied onto phi_0,
// with phi_k written out for an axis in the x-z plane.
Spinor projector_chain(double cos_theta, double a, int steps)
{
	const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
	std::vector<Spinor> states;
	for (int k = 0; k <= steps; ++k) {
		const double t = a * k / steps;
		// exp(-i t sigma.n)(1,0) = (cos t - i n_z sin t, -i n_x sin t)
		states.push_back(Spinor{{std::cos(t), -cos_theta * std::sin(t)}, {0.0, -sin_theta * std::sin(t)}});
	}
	Spinor psi = states.front();
	for (int k = 1; k <= steps; ++k) {
		const Spinor& p = states[static_cast<std::size_t>(k)];
		const Mat2 projector{{p.c0 * std::conj(p.c0), p.c0 * std::conj(p.c1), p.c1 * std::conj(p.c0),
		                      p.c1 * std::conj(p.c1)}};
		psi = projector * psi;
	}
	return psi;
}

bool throws_kind(auto&& fn, ErrorKind kind, std::optional<std::size_t> step = std::nullopt)
{
	try {
		fn();
	} catch (const Error& e) {
		return e.kind() == kind && (!step || e.step() == step);
	}
	return false;
}

} // namespace

TEST_SUITE("zeno")
{
	TEST_CASE("family about the initial spin axis stays at the north pole")
	{
		const auto states = family(make_plan(UnitVec3::ez(), kPi, 4));
		REQUIRE(states.size() == 5);
		for (const Spinor& s : states) {
			CHECK(std::abs(s.norm() - 1.0) < 1e-15);
			CHECK(std::abs(s.c1) == 0.0);
			CHECK(su2::bloch_vector(s).z() == doctest::Approx(1.0).epsilon(1e-15));
		}
	}

	TEST_CASE("family quarter period about x")
	{
		const auto states = family(make_plan(UnitVec3::ex(), kPi / 2, 1));
		CHECK(states.front() == Spinor::up());
		CHECK(std::abs(states[1].c0) < 1e-16);
		CHECK(std::abs(states[1].c1 - Complex{0, -1}) < 1e-16);
	}

	TEST_CASE("family about y traces the pentagon vertices")
	{
		const auto states = family(make_plan(UnitVec3::ey(), kPi, 5));
		REQUIRE(states.size() == 6);
		for (int k = 0; k <= 5; ++k) {
			// Bloch rotation by 2 pi k / 5 about y applied to +z.
			const double phi = 2.0 * kPi * k / 5.0;
			const su2::Vec3 expected{std::sin(phi), 0.0, std::cos(phi)};
			CHECK(su2::norm(su2::bloch_vector(states[static_cast<std::size_t>(k)]) - expected) < 1e-14);
		}
	}

	TEST_CASE("run_free static Zeno: a = 0 leaves the state and phase untouched")
	{
		for (int i = 0; i < 20; ++i) {
			const auto plan = make_plan(testing::random_axis(), 0.0, 1 + i * 7);
			const auto r = run_free(plan);
			CHECK(r.final_state == Spinor::up());
			CHECK(r.survival_probability == 1.0);
			CHECK(r.geometric_phase == 0.0);
			CHECK(r.berry_phase == 0.0);
			CHECK(r.dynamical_phase == 0.0);
			CHECK(r.trajectory.size() == static_cast<std::size_t>(plan.steps) + 1);
		}
	}

	TEST_CASE("run_free about z: pure phases cancel")
	{
		const auto r = run_free(make_plan(UnitVec3::ez(), kPi, 10));
		CHECK(r.survival_probability == doctest::Approx(1.0).epsilon(1e-14));
		CHECK(phase_distance(r.berry_phase, 0.0) < 1e-13);
		CHECK(su2::distance(r.final_state, Spinor::up()) < 1e-14);
	}

	TEST_CASE("run_free about x, N = 4: survival 1/16, beta = pi")
	{
		const auto r = run_free(make_plan(UnitVec3::ex(), kPi, 4));
		const Spinor oracle = projector_chain(0.0, kPi, 4);
		CHECK(su2::distance(r.final_state, oracle) < 1e-15);
		CHECK(r.survival_probability == doctest::Approx(0.0625).epsilon(1e-14));
		CHECK(phase_distance(r.berry_phase, kPi) < 1e-14);
		const auto cf = closed_form_finite_n(0.0, 4);
		CHECK(cf.rho == doctest::Approx(0.25).epsilon(1e-15));
		CHECK(cf.beta == doctest::Approx(kPi).epsilon(1e-15));
	}

	TEST_CASE("run_free matches the explicit projector chain for general a")
	{
		for (int i = 0; i < 100; ++i) {
			const double c = testing::uniform(-1.0, 1.0);
			const double a = testing::uniform(-6.0, 6.0);
			const int n = 1 + static_cast<int>(testing::uniform(0.0, 40.0));
			const auto r = run_free(make_plan(testing::tilted_axis(c), a, n));
			CHECK(su2::distance(r.final_state, projector_chain(c, a, n)) < 1e-12);
			CHECK(std::abs(r.survival_probability - r.final_state.norm_squared()) <= 1e-12);
			const double step = a / n;
			const double survival = std::pow(std::cos(step) * std::cos(step) + c * c * std::sin(step) * std::sin(step), n);
			CHECK(std::abs(r.survival_probability - survival) < 1e-12);
		}
	}

	TEST_CASE("run_free trajectory records normalized post-projection states")
	{
		const auto plan = make_plan(testing::tilted_axis(0.3), kPi, 6);
		const auto r = run_free(plan, 2.0);
		const auto fam = family(plan);
		REQUIRE(r.trajectory.size() == 7);
		for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
			CHECK(r.trajectory[k].time == doctest::Approx(2.0 * static_cast<double>(k) / 6.0));
			CHECK(std::abs(r.trajectory[k].state.norm() - 1.0) < 1e-14);
			CHECK(std::abs(std::abs(su2::inner(fam[k], r.trajectory[k].state)) - 1.0) < 1e-14);
		}
	}

	TEST_CASE("run_free reports the killing projection")
	{
		// A single orthogonal projection leaves a rounding-level amplitude, far
		// above the kill threshold; a chain of them underflows and is reported.
		const auto single = run_free(make_plan(UnitVec3::ex(), kPi / 2, 1));
		CHECK(single.survival_probability < 1e-30);
		CHECK(std::abs(single.trajectory.back().state.norm() - 1.0) < 1e-14);

		const int steps = 40;
		const auto chain = make_plan(UnitVec3::ex(), steps * kPi / 2, steps);
		std::optional<std::size_t> killed_at;
		try {
			(void)run_free(chain);
		} catch (const Error& e) {
			CHECK(e.kind() == ErrorKind::EvolutionKilled);
			killed_at = e.step();
		}
		REQUIRE(killed_at.has_value());
		CHECK(*killed_at > 1);
		CHECK(*killed_at <= static_cast<std::size_t>(steps));
		// The chain truncated just before the reported step survives.
		const int last_ok = static_cast<int>(*killed_at) - 1;
		const auto prefix = make_plan(UnitVec3::ex(), last_ok * kPi / 2, last_ok);
		CHECK_NOTHROW((void)run_free(prefix));
		CHECK(throws_kind([] { (void)run_free(make_plan(UnitVec3::ex(), kPi, 0)); }, ErrorKind::InvalidArgument));
	}

	TEST_CASE("continuum_state examples")
	{
		for (double c : {-0.7, 0.0, 0.25, 0.5, 1.0}) {
			const Spinor s = continuum_state(make_plan(testing::tilted_axis(c), kPi, 1));
			const Spinor expected = std::polar(1.0, -solid_angle_cone(c) / 2.0) * Spinor::up();
			CHECK(su2::distance(s, expected) < 1e-14);
		}
		CHECK(su2::distance(continuum_state(make_plan(testing::random_axis(), 0.0, 3)), Spinor::up()) == 0.0);
		CHECK(su2::distance(continuum_state(make_plan(UnitVec3::ez(), kPi, 3)), Spinor::up()) < 1e-15);
	}

	TEST_CASE("closed_form_finite_n examples")
	{
		for (int n = 3; n < 40; ++n) {
			const auto cf = closed_form_finite_n(1.0, n);
			CHECK(std::abs(cf.rho - 1.0) < 1e-14);
			CHECK(std::abs(cf.beta) < 1e-14);
		}
		// Frozen from the projector-chain oracle.
		const auto cf = closed_form_finite_n(0.5, 5);
		CHECK(cf.rho == doctest::Approx(0.47246722824293447).epsilon(1e-13));
		CHECK(cf.beta == doctest::Approx(1.3993501259942303).epsilon(1e-13));
		const Spinor oracle = projector_chain(0.5, kPi, 5);
		CHECK(std::abs(oracle.c0) == doctest::Approx(cf.rho).epsilon(1e-13));
		CHECK(phase_distance(-std::arg(oracle.c0), cf.beta) < 1e-13);
	}

	TEST_CASE("closed forms reject fewer than three steps")
	{
		CHECK(throws_kind([] { (void)closed_form_finite_n(0.5, 2); }, ErrorKind::UnsupportedStepCount));
		CHECK(throws_kind([] { (void)solid_angle_polygon_formula(0.5, 2); }, ErrorKind::UnsupportedStepCount));
		CHECK(throws_kind([] { (void)closed_form_finite_n(1.5, 4); }, ErrorKind::InvalidArgument));
	}

	TEST_CASE("oracle equivalence: brute force equals rho exp(-i beta) phi_0")
	{
		for (double c : {-0.9, -0.5, 0.0, 0.3, 0.7, 1.0})
			for (int n = 3; n <= 64; ++n) {
				const auto r = run_free(make_plan(testing::tilted_axis(c), kPi, n));
				const auto cf = closed_form_finite_n(c, n);
				const Spinor expected = std::polar(cf.rho, -cf.beta) * Spinor::up();
				CHECK(su2::distance(r.final_state, expected) < 1e-10);
			}
	}

	TEST_CASE("pancharatnam_phase examples")
	{
		const std::vector<Spinor> same(5, testing::random_spinor());
		CHECK(pancharatnam_phase(same) == doctest::Approx(0.0).epsilon(1e-15));

		for (double c : {-0.9, -0.5, 0.0, 0.3, 0.7, 1.0})
			for (int n : {3, 4, 7, 16, 64}) {
				auto loop = family(make_plan(testing::tilted_axis(c), kPi, n));
				loop.push_back(Spinor::up());
				CHECK(phase_distance(pancharatnam_phase(loop), closed_form_finite_n(c, n).beta) < 1e-12);
			}

		auto static_loop = family(make_plan(testing::random_axis(), 0.0, 9));
		CHECK(pancharatnam_phase(static_loop) == 0.0);
	}

	TEST_CASE("pancharatnam_phase rejects orthogonal neighbours")
	{
		const std::vector<Spinor> states{Spinor::up(), Spinor::down(), Spinor::up()};
		CHECK(throws_kind([&] { (void)pancharatnam_phase(states); }, ErrorKind::UndefinedConnection, 0));
	}

	TEST_CASE("Zeno convergence: state error falls like 1/N")
	{
		const auto plan_base = make_plan(testing::tilted_axis(0.5, 0.4), kPi, 1);
		const Spinor limit = continuum_state(plan_base);
		double previous = 1.0;
		std::vector<double> xs, ys;
		for (int n = 8; n <= 1024; n *= 2) {
			auto plan = plan_base;
			plan.steps = n;
			const auto r = run_free(plan);
			const double err = su2::distance(r.final_state, limit);
			CHECK(err < previous);
			previous = err;
			xs.push_back(std::log(n));
			ys.push_back(std::log(err));
		}
		double mx = 0, my = 0;
		for (std::size_t i = 0; i < xs.size(); ++i) {
			mx += xs[i] / xs.size();
			my += ys[i] / ys.size();
		}
		double sxy = 0, sxx = 0;
		for (std::size_t i = 0; i < xs.size(); ++i) {
			sxy += (xs[i] - mx) * (ys[i] - my);
			sxx += (xs[i] - mx) * (xs[i] - mx);
		}
		const double slope = sxy / sxx;
		CHECK(slope >= -1.2);
		CHECK(slope <= -0.8);
	}

	TEST_CASE("survival tends to one in the Zeno limit")
	{
		for (int i = 0; i < 10; ++i) {
			auto plan = make_plan(testing::random_axis(), kPi, 16);
			double previous = 0.0;
			for (; plan.steps <= 4096; plan.steps *= 4) {
				const double p = run_free(plan).survival_probability;
				CHECK(p >= previous - 1e-12);
				previous = p;
			}
			CHECK(previous > 0.99);
		}
	}

	TEST_CASE("run_hamiltonian with mu = 0 reproduces run_free")
	{
		for (int i = 0; i < 10; ++i) {
			const auto plan = make_plan(testing::random_axis(), testing::uniform(-4, 4), 3 + i);
			HamiltonianSpec h;
			h.mu = 0.0;
			h.axis = testing::random_axis();
			h.total_time = 1.7;
			CHECK(run_hamiltonian(plan, h) == run_free(plan, 1.7));
		}
	}

	TEST_CASE("run_hamiltonian without projections is the undisturbed evolution")
	{
		auto plan = make_plan(testing::random_axis(), 1.0, 0);
		HamiltonianSpec h;
		h.mu = kPi / 2;
		h.axis = UnitVec3::ez();
		h.total_time = 1.0;
		const auto r = run_hamiltonian(plan, h);
		CHECK(std::abs(r.final_state.c0 - Complex{0, -1}) < 1e-15);
		CHECK(std::abs(r.final_state.c1) == 0.0);
		CHECK(r.survival_probability == doctest::Approx(1.0).epsilon(1e-15));
		CHECK(r.dynamical_phase == doctest::Approx(-kPi / 2));
		CHECK(r.geometric_phase == doctest::Approx(0.0).epsilon(1e-15));
	}

	TEST_CASE("run_hamiltonian: dynamical and geometric phases approach their limits")
	{
		const double c = 0.35;
		const auto n = testing::tilted_axis(c, 1.1);
		const auto b = testing::random_axis();
		for (double mu_t : {0.5, 1.0, 2.0}) {
			HamiltonianSpec h;
			h.mu = mu_t / 1.3;
			h.axis = b;
			h.total_time = 1.3;
			const auto r = run_hamiltonian(make_plan(n, kPi, 10000), h);
			const double dyn = -mu_t * su2::dot(b, n) * c;
			CHECK(std::abs(r.dynamical_phase - dyn) < 1e-3);
			CHECK(phase_distance(r.geometric_phase, -solid_angle_cone(c) / 2.0) < 1e-3);
			CHECK(phase_distance(r.berry_phase, solid_angle_cone(c) / 2.0) < 1e-3);
			CHECK(std::abs(r.survival_probability - r.final_state.norm_squared()) <= 1e-12);
		}
	}

	TEST_CASE("solid_angle_cone")
	{
		CHECK(solid_angle_cone(1.0) == 0.0);
		CHECK(solid_angle_cone(0.0) == doctest::Approx(2 * kPi));
		CHECK(solid_angle_cone(-1.0) == doctest::Approx(4 * kPi));
		CHECK(throws_kind([] { (void)solid_angle_cone(1.0001); }, ErrorKind::InvalidArgument));
	}

	TEST_CASE("phase helpers")
	{
		CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
		CHECK(wrap_two_pi(kTwoPi) == 0.0);
		CHECK(wrap_two_pi(-1e-16) == 0.0);
		CHECK(phase_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2));
	}
}
