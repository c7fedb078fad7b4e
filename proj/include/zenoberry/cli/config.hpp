#pragma once

#include "zenoberry/zeno.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace zenoberry::cli {

/// Raised for malformed or inconsistent experiment configurations (exit 2).
class ConfigError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

enum class Mode { SpinFree, SpinHamiltonian, PhotonPolygon, Sweep };
enum class Format { Csv, Json };

std::string_view to_string(Mode mode);
std::string_view to_string(Format format);
Mode parse_mode(std::string_view text);
Format parse_format(std::string_view text);

struct PhotonSetup
{
	int sides = 0;
	double momentum_polar_angle = 0.5;
	double polarization_angle = 0.0;

	friend bool operator==(const PhotonSetup&, const PhotonSetup&) = default;
};

struct SweepSpec
{
	/// One of steps, cos_theta, mu, polygon_sides.
	std::string parameter;
	double start = 0.0;
	double stop = 0.0;
	double step = 1.0;
	bool multiplicative = false;

	friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct OutputSpec
{
	/// Empty means standard output.
	std::string path;
	Format format = Format::Csv;
	/// Optional separate trajectory CSV (single runs only).
	std::string trajectory_path;
	/// Fill wall_time_seconds; off by default so outputs are reproducible.
	bool record_timing = false;

	friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct ExperimentConfig
{
	Mode mode = Mode::SpinFree;
	std::optional<zeno::MeasurementPlan> plan;
	std::optional<zeno::HamiltonianSpec> hamiltonian;
	std::optional<PhotonSetup> photon;
	std::optional<SweepSpec> sweep;
	OutputSpec output;

	/// Throws ConfigError unless exactly the fields the mode needs are set.
	void validate() const;
	/// Mode each sweep point runs in.
	Mode point_mode() const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Accepts plain radians or a "pi" literal: "pi", "pi*0.5", "-pi*0.25".
double parse_angle(std::string_view text);
/// "x,y,z" to a unit vector (tolerance 1e-9).
su2::UnitVec3 parse_axis(std::string_view text);
/// "name:start:stop:*factor" or "name:start:stop:+increment".
SweepSpec parse_sweep(std::string_view text);

nlohmann::json to_json(const ExperimentConfig& config);
/// Throws ConfigError on schema violations; does not call validate().
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Parameter values of a sweep, in sweep order. Integer parameters are
/// rounded and must be integral.
std::vector<double> sweep_points(const SweepSpec& sweep);

} // namespace zenoberry::cli
