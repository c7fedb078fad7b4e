#include "zenoberry/zeno.hpp"

#include "zenoberry/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace zenoberry::zeno {

using su2::Vec3;

namespace {

void require_cos(double cos_theta)
{
	if (!(cos_theta >= -1.0 && cos_theta <= 1.0))
		throw Error(ErrorKind::InvalidArgument, "cos(theta) outside [-1, 1]");
}

// Van Oosterom-Strackee: tan(Omega/2) = a.(b x c) / (1 + a.b + b.c + c.a)
double signed_triangle(const Vec3& a, const Vec3& b, const Vec3& c)
{
	const double triple = su2::dot(a, su2::cross(b, c));
	const double denom = 1.0 + su2::dot(a, b) + su2::dot(b, c) + su2::dot(c, a);
	return 2.0 * std::atan2(triple, denom);
}

// Apex shared by every fan triangle. The vertex centroid is independent of
// traversal order; for polygons on a great circle it vanishes and a pole of
// the circle (sign fixed by its largest component) is used instead.
Vec3 fan_apex(std::span<const UnitVec3> vertices)
{
	const std::size_t n = vertices.size();
	Vec3 centroid;
	Vec3 area;
	for (std::size_t i = 0; i < n; ++i) {
		centroid = centroid + vertices[i].vec();
		area = area + su2::cross(vertices[i], vertices[(i + 1) % n]);
	}
	const double centroid_len = su2::norm(centroid);
	if (centroid_len > 1e-6 * static_cast<double>(n))
		return (1.0 / centroid_len) * centroid;

	const double area_len = su2::norm(area);
	if (!(area_len > 1e-12))
		throw Error(ErrorKind::DegeneratePolygon, "polygon encloses no orientable area");
	Vec3 pole = (1.0 / area_len) * area;
	const double components[] = {pole.x, pole.y, pole.z};
	const auto largest = std::max_element(std::begin(components), std::end(components),
	                                      [](double p, double q) { return std::abs(p) < std::abs(q); });
	if (*largest < 0.0)
		pole = -1.0 * pole;
	return pole;
}

} // namespace

double solid_angle_cone(double cos_theta)
{
	require_cos(cos_theta);
	return 2.0 * std::numbers::pi * (1.0 - cos_theta);
}

double solid_angle_polygon_formula(double cos_theta, int steps)
{
	if (steps < 3)
		throw Error(ErrorKind::UnsupportedStepCount, "polygon solid angle needs at least 3 sides");
	require_cos(cos_theta);
	return 2.0 * std::numbers::pi - 2.0 * steps * std::atan(cos_theta * std::tan(std::numbers::pi / steps));
}

double solid_angle_spherical_polygon(std::span<const UnitVec3> vertices)
{
	const std::size_t n = vertices.size();
	if (n < 3)
		throw Error(ErrorKind::DegeneratePolygon, "a spherical polygon needs at least 3 vertices");

	constexpr double kMinSeparation = 1e-9;
	for (std::size_t i = 0; i < n; ++i) {
		const Vec3& a = vertices[i];
		const Vec3& b = vertices[(i + 1) % n];
		const double separation = std::atan2(su2::norm(su2::cross(a, b)), su2::dot(a, b));
		if (!(separation > kMinSeparation && separation < std::numbers::pi - kMinSeparation))
			throw Error(ErrorKind::DegeneratePolygon,
			            "vertices " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
			                " are coincident or antipodal",
			            i);
	}

	const Vec3 apex = fan_apex(vertices);
	double total = 0.0;
	for (std::size_t i = 0; i < n; ++i)
		total += signed_triangle(apex, vertices[i], vertices[(i + 1) % n]);
	// A self-winding loop can accumulate several sphere areas; the enclosed
	// solid angle is only defined modulo 4pi.
	return std::fmod(total, 4.0 * std::numbers::pi);
}

} // namespace zenoberry::zeno
