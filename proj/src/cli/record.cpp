#include "zenoberry/cli/record.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zenoberry::cli {

std::vector<std::string> RunRecord::columns() const
{
	std::vector<std::string> out;
	out.reserve(inputs.size() + outputs.size() + residuals.size() + 1);
	for (const auto* group : {&inputs, &outputs, &residuals})
		for (const auto& [key, value] : *group)
			out.push_back(key);
	out.emplace_back("wall_time_seconds");
	return out;
}

const Value& RunRecord::at(const std::string& key) const
{
	for (const auto* group : {&inputs, &outputs, &residuals}) {
		const auto it = group->find(key);
		if (it != group->end())
			return it->second;
	}
	throw std::out_of_range("record has no column '" + key + "'");
}

double RunRecord::number(const std::string& key) const
{
	if (key == "wall_time_seconds")
		return wall_time_seconds;
	const Value& v = at(key);
	if (const auto* d = std::get_if<double>(&v))
		return *d;
	if (const auto* i = std::get_if<std::int64_t>(&v))
		return static_cast<double>(*i);
	return std::numeric_limits<double>::quiet_NaN();
}

Value real(double v)
{
	if (std::isnan(v))
		return std::monostate{};
	return v + 0.0;
}

Value optional_real(bool present, double v)
{
	return present ? real(v) : Value{std::monostate{}};
}

} // namespace zenoberry::cli
