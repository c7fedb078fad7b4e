#pragma once

#include <array>
#include <complex>

namespace zenoberry::su2 {

using Complex = std::complex<double>;

struct Vec3
{
	double x = 0.0;
	double y = 0.0;
	double z = 0.0;

	friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
	friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
	friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
	friend bool operator==(const Vec3&, const Vec3&) = default;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);

/// Direction on the unit sphere. Construction rejects inputs whose length
/// deviates from 1 by more than `kAxisTolerance` and renormalizes the rest,
/// so stored values are unit within 1e-12.
class UnitVec3
{
public:
	static constexpr double kAxisTolerance = 1e-9;

	/// Throws invalid-argument if | |v| - 1 | > kAxisTolerance.
	static UnitVec3 from(const Vec3& v);
	static UnitVec3 from(double x, double y, double z) { return from(Vec3{x, y, z}); }
	/// Normalizes any nonzero finite vector; throws invalid-argument otherwise.
	static UnitVec3 normalize(const Vec3& v);

	static UnitVec3 ex() { return UnitVec3(Vec3{1.0, 0.0, 0.0}); }
	static UnitVec3 ey() { return UnitVec3(Vec3{0.0, 1.0, 0.0}); }
	static UnitVec3 ez() { return UnitVec3(Vec3{0.0, 0.0, 1.0}); }

	double x() const { return v_.x; }
	double y() const { return v_.y; }
	double z() const { return v_.z; }
	const Vec3& vec() const { return v_; }
	operator const Vec3&() const { return v_; }

	UnitVec3 operator-() const { return UnitVec3(Vec3{-v_.x, -v_.y, -v_.z}); }
	friend bool operator==(const UnitVec3&, const UnitVec3&) = default;

private:
	explicit UnitVec3(const Vec3& v) : v_(v) {}
	Vec3 v_;
};

/// Two-component state in the sigma_z basis. Projection chains shrink the
/// norm; its square is the survival probability.
struct Spinor
{
	static constexpr double kPureTolerance = 1e-12;

	Complex c0{1.0, 0.0};
	Complex c1{0.0, 0.0};

	/// Pure state; throws invalid-argument unless the norm is 1 within 1e-12.
	static Spinor pure(Complex c0, Complex c1);
	static Spinor up() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }
	static Spinor down() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }

	double norm() const;
	double norm_squared() const;
	/// Throws degenerate-state if the norm is below 1e-9.
	Spinor normalized() const;

	friend Spinor operator*(Complex s, const Spinor& v) { return {s * v.c0, s * v.c1}; }
	friend Spinor operator+(const Spinor& a, const Spinor& b) { return {a.c0 + b.c0, a.c1 + b.c1}; }
	friend Spinor operator-(const Spinor& a, const Spinor& b) { return {a.c0 - b.c0, a.c1 - b.c1}; }
	friend bool operator==(const Spinor&, const Spinor&) = default;
};

/// <a|b>
Complex inner(const Spinor& a, const Spinor& b);
/// Euclidean distance |a - b|.
double distance(const Spinor& a, const Spinor& b);

/// Row-major complex 2x2 matrix.
struct Mat2
{
	std::array<Complex, 4> m{};

	static Mat2 identity();
	Complex operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }

	Mat2 adjoint() const;
	Complex determinant() const;

	friend Mat2 operator*(const Mat2& a, const Mat2& b);
	friend Spinor operator*(const Mat2& a, const Spinor& s);
	friend Mat2 operator*(Complex s, const Mat2& a);
	friend Mat2 operator+(const Mat2& a, const Mat2& b);
	friend Mat2 operator-(const Mat2& a, const Mat2& b);
	friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2& a, const Mat2& b);

Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();
/// sigma . n
Mat2 sigma_dot(const Vec3& n);

/// exp(-i theta sigma.n) = cos(theta) I - i sin(theta) sigma.n.
///
/// No half angle: the Bloch vector of the rotated state turns by 2*theta
/// about n. This is the convention of the measurement family and of every
/// closed form in the zeno module.
Mat2 rotation_operator(const UnitVec3& n, double theta);

/// |target><target|s>. Throws invalid-argument if target is not normalized.
Spinor project_onto(const Spinor& target, const Spinor& s);

/// <s|sigma|s> for the normalized s; throws degenerate-state if |s| < 1e-9.
UnitVec3 bloch_vector(const Spinor& s);

} // namespace zenoberry::su2
