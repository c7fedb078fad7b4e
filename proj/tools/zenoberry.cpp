// zenoberry: measurement-driven geometric phase experiments.
//
// Exit status: 0 success, 2 invalid configuration, 3 engine failure,
// 4 output failure. Errors are reported on stderr as one JSON object.

#include "zenoberry/cli/config.hpp"
#include "zenoberry/cli/emit.hpp"
#include "zenoberry/cli/runner.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace zenoberry::cli;
using nlohmann::json;

int fail(int status, const std::string& error, const std::string& message, json extra = json::object())
{
	json j = {{"status", status}, {"error", error}, {"message", message}};
	j.update(extra);
	std::cerr << j.dump() << '\n';
	return status;
}

json& child(json& root, const char* key)
{
	if (!root.contains(key))
		root[key] = json::object();
	return root[key];
}

struct Flags
{
	std::string config_path;
	std::optional<std::string> mode, axis_n, total_angle, axis_b, time, mu, sweep, out, format, trajectory;
	std::optional<std::string> momentum_polar_angle, polarization_angle, summary_out;
	std::optional<int> steps, polygon_sides;
	bool record_timing = false;
	bool print_config = false;
};

json angle_json(const std::string& text)
{
	return json(text);
}

ExperimentConfig build_config(const Flags& f)
{
	json j = json::object();
	if (!f.config_path.empty()) {
		std::ifstream in(f.config_path);
		if (!in)
			throw ConfigError("cannot read config file '" + f.config_path + "'");
		try {
			j = json::parse(in);
		} catch (const json::exception& e) {
			throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
		}
		if (!j.is_object())
			throw ConfigError("configuration must be a JSON object");
	}

	if (f.mode)
		j["mode"] = *f.mode;
	if (f.axis_n)
		child(j, "plan")["axis"] = *f.axis_n;
	if (f.total_angle)
		child(j, "plan")["total_angle"] = angle_json(*f.total_angle);
	if (f.steps)
		child(j, "plan")["steps"] = *f.steps;
	if (f.mu)
		child(j, "hamiltonian")["mu"] = std::stod(*f.mu);
	if (f.axis_b)
		child(j, "hamiltonian")["axis"] = *f.axis_b;
	if (f.time)
		child(j, "hamiltonian")["time"] = std::stod(*f.time);
	if (f.polygon_sides)
		child(j, "photon")["polygon_sides"] = *f.polygon_sides;
	if (f.momentum_polar_angle)
		child(j, "photon")["momentum_polar_angle"] = angle_json(*f.momentum_polar_angle);
	if (f.polarization_angle)
		child(j, "photon")["polarization_angle"] = angle_json(*f.polarization_angle);
	if (f.sweep)
		j["sweep"] = *f.sweep;
	if (f.out)
		child(j, "output")["path"] = *f.out;
	if (f.format)
		child(j, "output")["format"] = *f.format;
	if (f.trajectory)
		child(j, "output")["trajectory_path"] = *f.trajectory;
	if (f.record_timing)
		child(j, "output")["record_timing"] = true;

	// The swept quantity need not be given explicitly.
	if (j.contains("sweep")) {
		const SweepSpec s = j["sweep"].is_string() ? parse_sweep(j["sweep"].get<std::string>())
		                                           : SweepSpec{j["sweep"].value("parameter", std::string{})};
		if (s.parameter == "steps" && j.contains("plan") && !j["plan"].contains("steps"))
			j["plan"]["steps"] = 1;
		if (s.parameter == "cos_theta" && j.contains("plan") && !j["plan"].contains("axis"))
			j["plan"]["axis"] = json::array({0.0, 0.0, 1.0});
		if (s.parameter == "mu" && j.contains("hamiltonian") && !j["hamiltonian"].contains("mu"))
			j["hamiltonian"]["mu"] = 0.0;
		if (s.parameter == "polygon_sides" && !j.contains("photon"))
			j["photon"] = json::object();
		if (s.parameter == "polygon_sides" && !j["photon"].contains("polygon_sides"))
			j["photon"]["polygon_sides"] = 0;
	}
	return config_from_json(j);
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Measurement-induced geometric phases: spin projection chains and mirror-polygon photon transport"};
	Flags f;
	app.add_option("--config", f.config_path, "JSON configuration file; flags override its fields");
	app.add_option("--mode", f.mode, "spin-free | spin-hamiltonian | photon-polygon | sweep");
	app.add_option("--axis-n", f.axis_n, "projection axis n as \"x,y,z\"");
	app.add_option("--total-angle", f.total_angle, "total family angle a (radians, or pi*k)");
	app.add_option("--steps", f.steps, "number of projections N");
	app.add_option("--mu", f.mu, "field strength mu");
	app.add_option("--axis-b", f.axis_b, "field axis b as \"x,y,z\"");
	app.add_option("--time", f.time, "total time T");
	app.add_option("--polygon-sides", f.polygon_sides, "number of mirrors");
	app.add_option("--momentum-polar-angle", f.momentum_polar_angle, "photon momentum polar angle in (0, pi)");
	app.add_option("--polarization-angle", f.polarization_angle, "linear polarization angle from k x z");
	app.add_option("--sweep", f.sweep, "name:start:stop:*factor or name:start:stop:+increment");
	app.add_option("--out", f.out, "output file (default: stdout)");
	app.add_option("--format", f.format, "csv | json");
	app.add_option("--dump-trajectory", f.trajectory, "write the trajectory CSV to this path");
	app.add_option("--summary-out", f.summary_out, "sweep summary file (default: <out>.summary.<ext>)");
	app.add_flag("--record-timing", f.record_timing, "fill wall_time_seconds (makes output non-reproducible)");
	app.add_flag("--print-config", f.print_config, "print the effective configuration as JSON and exit");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		return fail(2, "invalid-config", e.what());
	}

	ExperimentConfig config;
	unsigned threads = 1;
	try {
		config = build_config(f);
		config.validate();
		threads = threads_from_env();
	} catch (const ConfigError& e) {
		return fail(2, "invalid-config", e.what());
	} catch (const std::exception& e) {
		return fail(2, "invalid-config", e.what());
	}

	if (f.print_config) {
		std::cout << to_json(config).dump(2) << '\n';
		return 0;
	}

	RunOutput output;
	try {
		output = run(config, threads);
	} catch (const RunError& e) {
		json extra = json::object();
		if (e.step())
			extra["step"] = *e.step();
		if (e.sweep_index())
			extra["sweep_index"] = *e.sweep_index();
		return fail(3, std::string(zenoberry::to_string(e.kind())), e.what(), extra);
	} catch (const ConfigError& e) {
		return fail(2, "invalid-config", e.what());
	}

	try {
		const std::string body = emit(output.records, config.output.format);
		const std::string summary = output.summary ? emit({*output.summary}, config.output.format) : std::string{};
		if (config.output.path.empty()) {
			std::cout << body;
			if (!summary.empty() && !f.summary_out)
				std::cout << '\n' << summary;
			std::cout.flush();
			if (!std::cout)
				throw IoError("failed writing to standard output");
		} else {
			write_atomic(config.output.path, body);
		}
		if (!summary.empty() && (f.summary_out || !config.output.path.empty()))
			write_atomic(f.summary_out ? std::filesystem::path(*f.summary_out) : summary_path(config.output.path), summary);
		if (!config.output.trajectory_path.empty())
			write_atomic(config.output.trajectory_path, output.trajectory_csv);
	} catch (const IoError& e) {
		return fail(4, "io-error", e.what());
	} catch (const std::exception& e) {
		return fail(4, "io-error", e.what());
	}
	return 0;
}
