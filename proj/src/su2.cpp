#include "zenoberry/su2.hpp"

#include "zenoberry/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace zenoberry::su2 {

double dot(const Vec3& a, const Vec3& b)
{
	return a.x * b.x + a.y * b.y + a.z * b.z;
}

Vec3 cross(const Vec3& a, const Vec3& b)
{
	return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v)
{
	return std::sqrt(dot(v, v));
}

UnitVec3 UnitVec3::from(const Vec3& v)
{
	const double len = norm(v);
	if (!std::isfinite(len) || std::abs(len - 1.0) > kAxisTolerance)
		throw Error(ErrorKind::InvalidArgument,
		            "axis is not a unit vector (|v| = " + std::to_string(len) + ")");
	// Vectors that are already unit up to rounding are kept bit for bit, so
	// that normalize() output survives serialization round trips unchanged.
	if (std::abs(len - 1.0) <= 4 * std::numeric_limits<double>::epsilon())
		return UnitVec3(v);
	return UnitVec3((1.0 / len) * v);
}

UnitVec3 UnitVec3::normalize(const Vec3& v)
{
	const double len = norm(v);
	if (!std::isfinite(len) || len == 0.0)
		throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero or non-finite vector");
	// Vectors that are already unit up to rounding are kept bit for bit, so
	// that normalize() output survives serialization round trips unchanged.
	if (std::abs(len - 1.0) <= 4 * std::numeric_limits<double>::epsilon())
		return UnitVec3(v);
	return UnitVec3((1.0 / len) * v);
}

Spinor Spinor::pure(Complex c0, Complex c1)
{
	Spinor s{c0, c1};
	if (!(std::abs(s.norm() - 1.0) <= kPureTolerance))
		throw Error(ErrorKind::InvalidArgument, "pure spinor must have unit norm");
	return s;
}

double Spinor::norm_squared() const
{
	return std::norm(c0) + std::norm(c1);
}

double Spinor::norm() const
{
	return std::sqrt(norm_squared());
}

Spinor Spinor::normalized() const
{
	const double n = norm();
	if (!(n >= 1e-9))
		throw Error(ErrorKind::DegenerateState, "spinor norm below 1e-9");
	return Complex{1.0 / n, 0.0} * *this;
}

Complex inner(const Spinor& a, const Spinor& b)
{
	return std::conj(a.c0) * b.c0 + std::conj(a.c1) * b.c1;
}

double distance(const Spinor& a, const Spinor& b)
{
	return (a - b).norm();
}

Mat2 Mat2::identity()
{
	return Mat2{{Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0}}};
}

Mat2 Mat2::adjoint() const
{
	return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

Complex Mat2::determinant() const
{
	return m[0] * m[3] - m[1] * m[2];
}

Mat2 operator*(const Mat2& a, const Mat2& b)
{
	return Mat2{{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
	             a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
}

Spinor operator*(const Mat2& a, const Spinor& s)
{
	return {a.m[0] * s.c0 + a.m[1] * s.c1, a.m[2] * s.c0 + a.m[3] * s.c1};
}

Mat2 operator*(Complex s, const Mat2& a)
{
	return Mat2{{s * a.m[0], s * a.m[1], s * a.m[2], s * a.m[3]}};
}

Mat2 operator+(const Mat2& a, const Mat2& b)
{
	return Mat2{{a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2], a.m[3] + b.m[3]}};
}

Mat2 operator-(const Mat2& a, const Mat2& b)
{
	return Mat2{{a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2], a.m[3] - b.m[3]}};
}

double max_abs_diff(const Mat2& a, const Mat2& b)
{
	double worst = 0.0;
	for (std::size_t i = 0; i < 4; ++i)
		worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
	return worst;
}

Mat2 sigma_x()
{
	return Mat2{{Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 0.0}}};
}

Mat2 sigma_y()
{
	return Mat2{{Complex{0.0, 0.0}, Complex{0.0, -1.0}, Complex{0.0, 1.0}, Complex{0.0, 0.0}}};
}

Mat2 sigma_z()
{
	return Mat2{{Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{0.0, 0.0}, Complex{-1.0, 0.0}}};
}

Mat2 sigma_dot(const Vec3& n)
{
	return Mat2{{Complex{n.z, 0.0}, Complex{n.x, -n.y}, Complex{n.x, n.y}, Complex{-n.z, 0.0}}};
}

Mat2 rotation_operator(const UnitVec3& n, double theta)
{
	const double c = std::cos(theta);
	const double s = std::sin(theta);
	// cos(t) I - i sin(t) (n_z, n_x - i n_y; n_x + i n_y, -n_z)
	return Mat2{{Complex{c, -s * n.z()}, Complex{-s * n.y(), -s * n.x()},
	             Complex{s * n.y(), -s * n.x()}, Complex{c, s * n.z()}}};
}

Spinor project_onto(const Spinor& target, const Spinor& s)
{
	if (!(std::abs(target.norm() - 1.0) <= Spinor::kPureTolerance))
		throw Error(ErrorKind::InvalidArgument, "projection target must be normalized");
	return inner(target, s) * target;
}

UnitVec3 bloch_vector(const Spinor& s)
{
	const Spinor u = s.normalized();
	const Complex cross_term = std::conj(u.c0) * u.c1;
	const Vec3 r{2.0 * cross_term.real(), 2.0 * cross_term.imag(), std::norm(u.c0) - std::norm(u.c1)};
	return UnitVec3::normalize(r);
}

} // namespace zenoberry::su2
