#pragma once

#include "zenoberry/su2.hpp"

#include <array>
#include <string>
#include <vector>

namespace zenoberry::photon {

using su2::Complex;
using su2::UnitVec3;
using su2::Vec3;

/// Real 3x3 rotation, row-major.
struct Rot3
{
	std::array<double, 9> m{};

	static Rot3 identity();
	double operator()(int row, int col) const { return m[static_cast<std::size_t>(3 * row + col)]; }
	Rot3 transpose() const;
	double determinant() const;

	friend Rot3 operator*(const Rot3& a, const Rot3& b);
	friend Vec3 operator*(const Rot3& a, const Vec3& v);
};

/// Largest entrywise |a - b|.
double max_abs_diff(const Rot3& a, const Rot3& b);
/// max(|R^T R - I|, |det R - 1|).
double orthogonality_defect(const Rot3& r);

/// Complex transverse polarization vector, unit norm.
struct PolVec
{
	std::array<Complex, 3> v{};

	/// Throws invalid-argument unless the norm is 1 within 1e-12.
	static PolVec from(Complex x, Complex y, Complex z);
	static PolVec real(const Vec3& r) { return from(r.x, r.y, r.z); }

	double norm() const;
	/// Largest |imaginary part| of the components.
	double max_imag() const;
	Vec3 real_part() const { return {v[0].real(), v[1].real(), v[2].real()}; }

	friend PolVec operator*(const Rot3& r, const PolVec& p);
};

/// Largest componentwise |a - b|.
double max_abs_diff(const PolVec& a, const PolVec& b);
/// p . k with the real momentum (no conjugation).
Complex transverse_overlap(const PolVec& p, const Vec3& k);

struct PhotonState
{
	static constexpr double kTransverseTolerance = 1e-10;

	UnitVec3 momentum = UnitVec3::ez();
	PolVec polarization;
	int helicity_parity = 1;

	/// Checks transversality and parity in {+1, -1}; throws invalid-argument.
	static PhotonState make(const UnitVec3& momentum, const PolVec& polarization, int helicity_parity = 1);
	/// k = (sin t, 0, cos t) with linear polarization cos(chi) e1 + sin(chi) e2,
	/// where e1 = normalize(k x z) and e2 = k x e1. chi = 0 is the k x z default.
	/// Requires t in (0, pi).
	static PhotonState linear(double momentum_polar_angle, double polarization_angle = 0.0);
};

/// Regular polygonal cylinder of N mirrors; normal l is R_z(l alpha)(-1, 0, 0).
struct MirrorPolygon
{
	int sides = 0;
	std::vector<UnitVec3> normals;
	double alpha = 0.0;

	/// Throws unsupported-polygon for N < 3.
	static MirrorPolygon regular(int sides);
};

/// Non-fatal report of a reflection whose incidence is unphysical (k . n >= 0).
struct Diagnostic
{
	std::size_t mirror_index = 0;
	double incidence_cosine = 0.0;
	std::string message;
};

/// Rodrigues form of exp(-i angle n.J), (J_k)_ij = -i eps_kij: a
/// counter-clockwise rotation by `angle` about n.
Rot3 rotation_about(const UnitVec3& axis, double angle);

/// Ideal-mirror action on polarization, M(n) = R_n(pi) = 2 n n^T - I.
Rot3 mirror_operator(const UnitVec3& normal);

/// k' = -R_n(pi) k, p' = M(n) p, helicity parity flipped.
PhotonState reflect(const PhotonState& photon, const UnitVec3& normal,
                    std::vector<Diagnostic>* diagnostics = nullptr, std::size_t mirror_index = 0);

/// Initial state followed by the state after each mirror (N + 1 entries).
std::vector<PhotonState> trace_polygon(const PhotonState& initial, const MirrorPolygon& polygon,
                                       std::vector<Diagnostic>* diagnostics = nullptr);

/// Axis of the composite half-turn, (-cos(alpha/2), sin(alpha/2), 0).
UnitVec3 composite_axis(const MirrorPolygon& polygon);

/// exp(-i N pi n~.J): identity for even N, R_n~(pi) for odd N.
Rot3 closed_form_final(const MirrorPolygon& polygon);

/// Signed solid angle enclosed by the polarization tips of a closed trace.
/// Requires real (linear) polarization and p_N = p_0 within 1e-9; throws
/// invalid-argument otherwise and degenerate-polygon when consecutive tips
/// coincide or are antipodal.
double polarization_loop_solid_angle(const std::vector<PhotonState>& trace);

} // namespace zenoberry::photon
