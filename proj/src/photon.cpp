#include "zenoberry/photon.hpp"

#include "zenoberry/errors.hpp"
#include "zenoberry/zeno.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zenoberry::photon {

Rot3 Rot3::identity()
{
	return Rot3{{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}};
}

Rot3 Rot3::transpose() const
{
	return Rot3{{m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]}};
}

double Rot3::determinant() const
{
	return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
	       m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Rot3 operator*(const Rot3& a, const Rot3& b)
{
	Rot3 out;
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < 3; ++j) {
			double sum = 0.0;
			for (int k = 0; k < 3; ++k)
				sum += a(i, k) * b(k, j);
			out.m[static_cast<std::size_t>(3 * i + j)] = sum;
		}
	return out;
}

Vec3 operator*(const Rot3& a, const Vec3& v)
{
	return {a.m[0] * v.x + a.m[1] * v.y + a.m[2] * v.z, a.m[3] * v.x + a.m[4] * v.y + a.m[5] * v.z,
	        a.m[6] * v.x + a.m[7] * v.y + a.m[8] * v.z};
}

double max_abs_diff(const Rot3& a, const Rot3& b)
{
	double worst = 0.0;
	for (std::size_t i = 0; i < 9; ++i)
		worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
	return worst;
}

double orthogonality_defect(const Rot3& r)
{
	return std::max(max_abs_diff(r.transpose() * r, Rot3::identity()), std::abs(r.determinant() - 1.0));
}

PolVec PolVec::from(Complex x, Complex y, Complex z)
{
	PolVec p{{x, y, z}};
	if (!(std::abs(p.norm() - 1.0) <= 1e-12))
		throw Error(ErrorKind::InvalidArgument, "polarization vector must have unit norm");
	return p;
}

double PolVec::norm() const
{
	return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

double PolVec::max_imag() const
{
	return std::max({std::abs(v[0].imag()), std::abs(v[1].imag()), std::abs(v[2].imag())});
}

PolVec operator*(const Rot3& r, const PolVec& p)
{
	PolVec out;
	for (std::size_t i = 0; i < 3; ++i)
		out.v[i] = r.m[3 * i] * p.v[0] + r.m[3 * i + 1] * p.v[1] + r.m[3 * i + 2] * p.v[2];
	return out;
}

double max_abs_diff(const PolVec& a, const PolVec& b)
{
	double worst = 0.0;
	for (std::size_t i = 0; i < 3; ++i)
		worst = std::max(worst, std::abs(a.v[i] - b.v[i]));
	return worst;
}

Complex transverse_overlap(const PolVec& p, const Vec3& k)
{
	return p.v[0] * k.x + p.v[1] * k.y + p.v[2] * k.z;
}

PhotonState PhotonState::make(const UnitVec3& momentum, const PolVec& polarization, int helicity_parity)
{
	if (helicity_parity != 1 && helicity_parity != -1)
		throw Error(ErrorKind::InvalidArgument, "helicity parity must be +1 or -1");
	if (!(std::abs(transverse_overlap(polarization, momentum)) <= kTransverseTolerance))
		throw Error(ErrorKind::InvalidArgument, "polarization is not transverse to the momentum");
	return PhotonState{momentum, polarization, helicity_parity};
}

PhotonState PhotonState::linear(double momentum_polar_angle, double polarization_angle)
{
	if (!(momentum_polar_angle > 0.0 && momentum_polar_angle < std::numbers::pi))
		throw Error(ErrorKind::InvalidArgument, "momentum polar angle must lie in (0, pi)");
	if (!std::isfinite(polarization_angle))
		throw Error(ErrorKind::InvalidArgument, "polarization angle must be finite");
	const UnitVec3 k = UnitVec3::normalize({std::sin(momentum_polar_angle), 0.0, std::cos(momentum_polar_angle)});
	const UnitVec3 e1 = UnitVec3::normalize(su2::cross(k, Vec3{0.0, 0.0, 1.0}));
	const Vec3 e2 = su2::cross(k, e1);
	const Vec3 p = std::cos(polarization_angle) * e1.vec() + std::sin(polarization_angle) * e2;
	return make(k, PolVec::real(UnitVec3::normalize(p)), 1);
}

MirrorPolygon MirrorPolygon::regular(int sides)
{
	if (sides < 3)
		throw Error(ErrorKind::UnsupportedPolygon, "a mirror polygon needs at least 3 sides");
	MirrorPolygon polygon;
	polygon.sides = sides;
	polygon.alpha = 2.0 * std::numbers::pi / sides;
	polygon.normals.reserve(static_cast<std::size_t>(sides));
	for (int l = 0; l < sides; ++l) {
		const double angle = l * polygon.alpha;
		polygon.normals.push_back(UnitVec3::normalize({-std::cos(angle), -std::sin(angle), 0.0}));
	}
	return polygon;
}

Rot3 rotation_about(const UnitVec3& axis, double angle)
{
	const double c = std::cos(angle);
	const double s = std::sin(angle);
	const double t = 1.0 - c;
	const double x = axis.x(), y = axis.y(), z = axis.z();
	return Rot3{{c + t * x * x, t * x * y - s * z, t * x * z + s * y,
	             t * y * x + s * z, c + t * y * y, t * y * z - s * x,
	             t * z * x - s * y, t * z * y + s * x, c + t * z * z}};
}

Rot3 mirror_operator(const UnitVec3& normal)
{
	const double x = normal.x(), y = normal.y(), z = normal.z();
	return Rot3{{2.0 * x * x - 1.0, 2.0 * x * y, 2.0 * x * z,
	             2.0 * y * x, 2.0 * y * y - 1.0, 2.0 * y * z,
	             2.0 * z * x, 2.0 * z * y, 2.0 * z * z - 1.0}};
}

PhotonState reflect(const PhotonState& photon, const UnitVec3& normal, std::vector<Diagnostic>* diagnostics,
                    std::size_t mirror_index)
{
	const double incidence = su2::dot(photon.momentum, normal);
	if (incidence >= 0.0 && diagnostics != nullptr)
		diagnostics->push_back({mirror_index, incidence, "momentum does not point into the mirror (k.n >= 0)"});

	const Rot3 m = mirror_operator(normal);
	PhotonState out;
	out.momentum = UnitVec3::normalize(-1.0 * (m * photon.momentum.vec()));
	out.polarization = m * photon.polarization;
	out.helicity_parity = -photon.helicity_parity;
	return out;
}

std::vector<PhotonState> trace_polygon(const PhotonState& initial, const MirrorPolygon& polygon,
                                       std::vector<Diagnostic>* diagnostics)
{
	std::vector<PhotonState> trace;
	trace.reserve(polygon.normals.size() + 1);
	trace.push_back(initial);
	for (std::size_t l = 0; l < polygon.normals.size(); ++l)
		trace.push_back(reflect(trace.back(), polygon.normals[l], diagnostics, l));
	return trace;
}

UnitVec3 composite_axis(const MirrorPolygon& polygon)
{
	return UnitVec3::normalize({-std::cos(polygon.alpha / 2.0), std::sin(polygon.alpha / 2.0), 0.0});
}

Rot3 closed_form_final(const MirrorPolygon& polygon)
{
	if (polygon.sides < 3)
		throw Error(ErrorKind::UnsupportedPolygon, "a mirror polygon needs at least 3 sides");
	return rotation_about(composite_axis(polygon), polygon.sides * std::numbers::pi);
}

double polarization_loop_solid_angle(const std::vector<PhotonState>& trace)
{
	if (trace.size() < 4)
		throw Error(ErrorKind::InvalidArgument, "a polarization loop needs at least 3 reflections");
	for (const PhotonState& s : trace)
		if (s.polarization.max_imag() > 1e-12)
			throw Error(ErrorKind::InvalidArgument, "loop solid angle requires linear (real) polarization");
	if (max_abs_diff(trace.front().polarization, trace.back().polarization) > 1e-9)
		throw Error(ErrorKind::InvalidArgument, "polarization path is not closed");

	std::vector<UnitVec3> tips;
	tips.reserve(trace.size() - 1);
	for (std::size_t i = 0; i + 1 < trace.size(); ++i)
		tips.push_back(UnitVec3::normalize(trace[i].polarization.real_part()));
	return zeno::solid_angle_spherical_polygon(tips);
}

} // namespace zenoberry::photon
