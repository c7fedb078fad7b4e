#include "zenoberry/cli/config.hpp"

#include "zenoberry/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace zenoberry::cli {

using nlohmann::json;

namespace {

bool is_integer_parameter(const std::string& name)
{
	return name == "steps" || name == "polygon_sides";
}

double parse_number(std::string_view text, std::string_view what)
{
	while (!text.empty() && text.front() == ' ')
		text.remove_prefix(1);
	while (!text.empty() && text.back() == ' ')
		text.remove_suffix(1);
	if (!text.empty() && text.front() == '+')
		text.remove_prefix(1);
	double value = 0.0;
	const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
		throw ConfigError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
	return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
	std::vector<std::string_view> parts;
	std::size_t begin = 0;
	for (;;) {
		const std::size_t pos = text.find(sep, begin);
		parts.push_back(text.substr(begin, pos - begin));
		if (pos == std::string_view::npos)
			break;
		begin = pos + 1;
	}
	return parts;
}

double angle_from_json(const json& j, std::string_view what)
{
	if (j.is_number())
		return j.get<double>();
	if (j.is_string())
		return parse_angle(j.get<std::string>());
	throw ConfigError(std::string(what) + " must be a number or an angle string");
}

su2::UnitVec3 axis_from_json(const json& j, std::string_view what)
{
	if (j.is_string())
		return parse_axis(j.get<std::string>());
	if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
		throw ConfigError(std::string(what) + " must be [x, y, z]");
	try {
		return su2::UnitVec3::from(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
	} catch (const Error& e) {
		throw ConfigError(std::string(what) + ": " + e.what());
	}
}

json axis_to_json(const su2::UnitVec3& v)
{
	return json::array({v.x(), v.y(), v.z()});
}

template <typename T>
T required(const json& obj, const char* key, std::string_view where)
{
	if (!obj.contains(key))
		throw ConfigError(std::string(where) + "." + key + " is required");
	try {
		return obj.at(key).get<T>();
	} catch (const json::exception&) {
		throw ConfigError(std::string(where) + "." + key + " has the wrong type");
	}
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, std::string_view where)
{
	for (const auto& item : obj.items()) {
		bool ok = false;
		for (auto k : known)
			ok = ok || item.key() == k;
		if (!ok)
			throw ConfigError("unknown field " + std::string(where) + "." + item.key());
	}
}

int integer_field(const json& obj, const char* key, std::string_view where)
{
	const double v = required<double>(obj, key, where);
	if (v != std::floor(v) || std::abs(v) > 1e9)
		throw ConfigError(std::string(where) + "." + key + " must be an integer");
	return static_cast<int>(v);
}

} // namespace

std::string_view to_string(Mode mode)
{
	switch (mode) {
	case Mode::SpinFree: return "spin-free";
	case Mode::SpinHamiltonian: return "spin-hamiltonian";
	case Mode::PhotonPolygon: return "photon-polygon";
	case Mode::Sweep: return "sweep";
	}
	return "?";
}

std::string_view to_string(Format format)
{
	return format == Format::Csv ? "csv" : "json";
}

Mode parse_mode(std::string_view text)
{
	for (Mode m : {Mode::SpinFree, Mode::SpinHamiltonian, Mode::PhotonPolygon, Mode::Sweep})
		if (text == to_string(m))
			return m;
	throw ConfigError("unknown mode '" + std::string(text) + "'");
}

Format parse_format(std::string_view text)
{
	if (text == "csv")
		return Format::Csv;
	if (text == "json")
		return Format::Json;
	throw ConfigError("unknown format '" + std::string(text) + "'");
}

double parse_angle(std::string_view text)
{
	std::string_view rest = text;
	double sign = 1.0;
	if (!rest.empty() && rest.front() == '-' && rest.substr(1).starts_with("pi")) {
		sign = -1.0;
		rest.remove_prefix(1);
	}
	if (rest.starts_with("pi")) {
		rest.remove_prefix(2);
		if (rest.empty())
			return sign * std::numbers::pi;
		if (rest.front() != '*')
			throw ConfigError("cannot parse angle '" + std::string(text) + "'");
		rest.remove_prefix(1);
		return sign * std::numbers::pi * parse_number(rest, "angle");
	}
	return parse_number(text, "angle");
}

su2::UnitVec3 parse_axis(std::string_view text)
{
	const auto parts = split(text, ',');
	if (parts.size() != 3)
		throw ConfigError("axis must be 'x,y,z', got '" + std::string(text) + "'");
	try {
		return su2::UnitVec3::from(parse_number(parts[0], "axis component"), parse_number(parts[1], "axis component"),
		                           parse_number(parts[2], "axis component"));
	} catch (const Error& e) {
		throw ConfigError(std::string("axis '") + std::string(text) + "': " + e.what());
	}
}

SweepSpec parse_sweep(std::string_view text)
{
	const auto parts = split(text, ':');
	if (parts.size() != 4 || parts[3].empty() || (parts[3].front() != '*' && parts[3].front() != '+'))
		throw ConfigError("sweep must be 'name:start:stop:*factor' or 'name:start:stop:+increment'");
	SweepSpec s;
	s.parameter = std::string(parts[0]);
	s.start = parse_number(parts[1], "sweep start");
	s.stop = parse_number(parts[2], "sweep stop");
	s.multiplicative = parts[3].front() == '*';
	s.step = parse_number(parts[3].substr(1), "sweep step");
	return s;
}

std::vector<double> sweep_points(const SweepSpec& s)
{
	constexpr std::size_t kMaxPoints = 1'000'000;
	if (s.parameter != "steps" && s.parameter != "cos_theta" && s.parameter != "mu" && s.parameter != "polygon_sides")
		throw ConfigError("sweep parameter must be one of steps, cos_theta, mu, polygon_sides");
	if (!std::isfinite(s.start) || !std::isfinite(s.stop) || !std::isfinite(s.step))
		throw ConfigError("sweep range must be finite");

	double count_real = 0.0;
	if (s.multiplicative) {
		if (!(s.step > 0.0) || s.step == 1.0 || !(s.start > 0.0) || !(s.stop > 0.0))
			throw ConfigError("multiplicative sweep needs positive start, stop and a factor other than 1");
		count_real = std::log(s.stop / s.start) / std::log(s.step);
	} else {
		if (s.step == 0.0)
			throw ConfigError("additive sweep needs a nonzero increment");
		count_real = (s.stop - s.start) / s.step;
	}
	if (!(count_real > -1e-9))
		throw ConfigError("sweep range is empty");
	const auto count = static_cast<std::size_t>(std::floor(count_real + 1e-9)) + 1;
	if (count > kMaxPoints)
		throw ConfigError("sweep has too many points");

	std::vector<double> points;
	points.reserve(count);
	for (std::size_t i = 0; i < count; ++i) {
		double v = s.multiplicative ? s.start * std::pow(s.step, static_cast<double>(i))
		                            : s.start + static_cast<double>(i) * s.step;
		if (is_integer_parameter(s.parameter)) {
			const double rounded = std::round(v);
			if (std::abs(v - rounded) > 1e-9 * std::max(1.0, std::abs(v)))
				throw ConfigError("sweep over " + s.parameter + " produced a non-integer value");
			v = rounded;
		}
		if (s.parameter == "cos_theta") {
			if (v < -1.0 - 1e-12 || v > 1.0 + 1e-12)
				throw ConfigError("cos_theta sweep leaves [-1, 1]");
			v = std::clamp(v, -1.0, 1.0);
		}
		points.push_back(v);
	}
	return points;
}

Mode ExperimentConfig::point_mode() const
{
	if (mode != Mode::Sweep)
		return mode;
	if (!sweep)
		throw ConfigError("sweep mode requires a sweep specification");
	if (sweep->parameter == "polygon_sides")
		return Mode::PhotonPolygon;
	if (sweep->parameter == "mu" || hamiltonian)
		return Mode::SpinHamiltonian;
	return Mode::SpinFree;
}

void ExperimentConfig::validate() const
{
	const Mode run_mode = point_mode();
	const bool spin = run_mode == Mode::SpinFree || run_mode == Mode::SpinHamiltonian;

	if (mode == Mode::Sweep) {
		(void)sweep_points(*sweep);
		if (!output.trajectory_path.empty())
			throw ConfigError("trajectory dumps are only available for single runs");
	} else if (sweep) {
		throw ConfigError("sweep specification is only valid in sweep mode");
	}

	if (spin && !plan)
		throw ConfigError("mode requires a measurement plan (axis, total angle, steps)");
	if (!spin && plan)
		throw ConfigError("measurement plan is not used by photon-polygon runs");
	if (run_mode == Mode::SpinHamiltonian && !hamiltonian)
		throw ConfigError("spin-hamiltonian runs require mu, field axis and time");
	if (run_mode != Mode::SpinHamiltonian && hamiltonian)
		throw ConfigError("hamiltonian fields are only valid for spin-hamiltonian runs");
	if (run_mode == Mode::PhotonPolygon && !photon)
		throw ConfigError("photon-polygon runs require polygon_sides");
	if (run_mode != Mode::PhotonPolygon && photon)
		throw ConfigError("photon fields are only valid for photon-polygon runs");

	try {
		if (plan)
			plan->validate(run_mode == Mode::SpinHamiltonian ? 0 : 1);
		if (hamiltonian)
			hamiltonian->validate();
	} catch (const Error& e) {
		throw ConfigError(e.what());
	}
	if (photon) {
		const bool sides_swept = mode == Mode::Sweep && sweep->parameter == "polygon_sides";
		if (!sides_swept && photon->sides < 3)
			throw ConfigError("polygon_sides must be at least 3");
		if (!(photon->momentum_polar_angle > 0.0 && photon->momentum_polar_angle < std::numbers::pi))
			throw ConfigError("photon momentum polar angle must lie in (0, pi)");
		if (!std::isfinite(photon->polarization_angle))
			throw ConfigError("photon polarization angle must be finite");
	}
	if (mode == Mode::Sweep && sweep->parameter == "polygon_sides" && sweep_points(*sweep).front() < 3)
		throw ConfigError("polygon_sides sweep must start at 3 or more");
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b)
{
	auto same_plan = [](const zeno::MeasurementPlan& p, const zeno::MeasurementPlan& q) {
		return p.axis == q.axis && p.total_angle == q.total_angle && p.steps == q.steps;
	};
	auto same_h = [](const zeno::HamiltonianSpec& p, const zeno::HamiltonianSpec& q) {
		return p.mu == q.mu && p.axis == q.axis && p.total_time == q.total_time;
	};
	if (a.mode != b.mode || a.photon != b.photon || a.sweep != b.sweep || a.output != b.output)
		return false;
	if (a.plan.has_value() != b.plan.has_value() || (a.plan && !same_plan(*a.plan, *b.plan)))
		return false;
	if (a.hamiltonian.has_value() != b.hamiltonian.has_value() || (a.hamiltonian && !same_h(*a.hamiltonian, *b.hamiltonian)))
		return false;
	return true;
}

json to_json(const ExperimentConfig& c)
{
	json j;
	j["mode"] = std::string(to_string(c.mode));
	if (c.plan)
		j["plan"] = {{"axis", axis_to_json(c.plan->axis)}, {"total_angle", c.plan->total_angle}, {"steps", c.plan->steps}};
	if (c.hamiltonian)
		j["hamiltonian"] = {{"mu", c.hamiltonian->mu},
		                    {"axis", axis_to_json(c.hamiltonian->axis)},
		                    {"time", c.hamiltonian->total_time}};
	if (c.photon)
		j["photon"] = {{"polygon_sides", c.photon->sides},
		               {"momentum_polar_angle", c.photon->momentum_polar_angle},
		               {"polarization_angle", c.photon->polarization_angle}};
	if (c.sweep)
		j["sweep"] = {{"parameter", c.sweep->parameter},
		              {"start", c.sweep->start},
		              {"stop", c.sweep->stop},
		              {"step", c.sweep->step},
		              {"scale", c.sweep->multiplicative ? "multiplicative" : "additive"}};
	json out = {{"path", c.output.path}, {"format", std::string(to_string(c.output.format))}};
	if (!c.output.trajectory_path.empty())
		out["trajectory_path"] = c.output.trajectory_path;
	if (c.output.record_timing)
		out["record_timing"] = true;
	j["output"] = out;
	return j;
}

ExperimentConfig config_from_json(const json& j)
{
	if (!j.is_object())
		throw ConfigError("configuration must be a JSON object");
	reject_unknown(j, {"mode", "plan", "hamiltonian", "photon", "sweep", "output"}, "config");

	ExperimentConfig c;
	c.mode = parse_mode(required<std::string>(j, "mode", "config"));

	if (j.contains("plan")) {
		const json& p = j.at("plan");
		if (!p.is_object())
			throw ConfigError("plan must be an object");
		reject_unknown(p, {"axis", "total_angle", "steps"}, "plan");
		zeno::MeasurementPlan plan;
		if (!p.contains("axis") || !p.contains("total_angle"))
			throw ConfigError("plan needs axis, total_angle and steps");
		plan.axis = axis_from_json(p.at("axis"), "plan.axis");
		plan.total_angle = angle_from_json(p.at("total_angle"), "plan.total_angle");
		plan.steps = integer_field(p, "steps", "plan");
		c.plan = plan;
	}
	if (j.contains("hamiltonian")) {
		const json& h = j.at("hamiltonian");
		if (!h.is_object())
			throw ConfigError("hamiltonian must be an object");
		reject_unknown(h, {"mu", "axis", "time"}, "hamiltonian");
		if (!h.contains("axis"))
			throw ConfigError("hamiltonian.axis is required");
		zeno::HamiltonianSpec spec;
		spec.mu = required<double>(h, "mu", "hamiltonian");
		spec.axis = axis_from_json(h.at("axis"), "hamiltonian.axis");
		if (h.contains("time"))
			spec.total_time = required<double>(h, "time", "hamiltonian");
		c.hamiltonian = spec;
	}
	if (j.contains("photon")) {
		const json& p = j.at("photon");
		if (!p.is_object())
			throw ConfigError("photon must be an object");
		reject_unknown(p, {"polygon_sides", "momentum_polar_angle", "polarization_angle"}, "photon");
		PhotonSetup setup;
		setup.sides = integer_field(p, "polygon_sides", "photon");
		if (p.contains("momentum_polar_angle"))
			setup.momentum_polar_angle = angle_from_json(p.at("momentum_polar_angle"), "photon.momentum_polar_angle");
		if (p.contains("polarization_angle"))
			setup.polarization_angle = angle_from_json(p.at("polarization_angle"), "photon.polarization_angle");
		c.photon = setup;
	}
	if (j.contains("sweep")) {
		const json& s = j.at("sweep");
		if (s.is_string()) {
			c.sweep = parse_sweep(s.get<std::string>());
		} else {
			if (!s.is_object())
				throw ConfigError("sweep must be an object or a sweep string");
			reject_unknown(s, {"parameter", "start", "stop", "step", "scale"}, "sweep");
			SweepSpec spec;
			spec.parameter = required<std::string>(s, "parameter", "sweep");
			spec.start = required<double>(s, "start", "sweep");
			spec.stop = required<double>(s, "stop", "sweep");
			spec.step = required<double>(s, "step", "sweep");
			const std::string scale = s.contains("scale") ? required<std::string>(s, "scale", "sweep") : "additive";
			if (scale != "additive" && scale != "multiplicative")
				throw ConfigError("sweep.scale must be additive or multiplicative");
			spec.multiplicative = scale == "multiplicative";
			c.sweep = spec;
		}
	}
	if (j.contains("output")) {
		const json& o = j.at("output");
		if (!o.is_object())
			throw ConfigError("output must be an object");
		reject_unknown(o, {"path", "format", "trajectory_path", "record_timing"}, "output");
		if (o.contains("path"))
			c.output.path = required<std::string>(o, "path", "output");
		if (o.contains("format"))
			c.output.format = parse_format(required<std::string>(o, "format", "output"));
		if (o.contains("trajectory_path"))
			c.output.trajectory_path = required<std::string>(o, "trajectory_path", "output");
		if (o.contains("record_timing"))
			c.output.record_timing = required<bool>(o, "record_timing", "output");
	}
	return c;
}

} // namespace zenoberry::cli
