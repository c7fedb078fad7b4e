#include "zenoberry/cli/emit.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace zenoberry::cli {

namespace {

std::string format_real(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
	return buf;
}

std::string csv_field(const Value& v)
{
	struct Visitor
	{
		std::string operator()(std::monostate) const { return ""; }
		std::string operator()(std::int64_t i) const { return std::to_string(i); }
		std::string operator()(double d) const { return format_real(d); }
		std::string operator()(const std::string& s) const
		{
			if (s.find_first_of(",\"\n") == std::string::npos)
				return s;
			std::string quoted = "\"";
			for (char ch : s) {
				if (ch == '"')
					quoted += '"';
				quoted += ch;
			}
			return quoted + '"';
		}
	};
	return std::visit(Visitor{}, v);
}

std::string json_field(const Value& v)
{
	struct Visitor
	{
		std::string operator()(std::monostate) const { return "null"; }
		std::string operator()(std::int64_t i) const { return std::to_string(i); }
		std::string operator()(double d) const { return format_real(d); }
		std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
	};
	return std::visit(Visitor{}, v);
}

Value cell(const RunRecord& r, const std::string& column)
{
	if (column == "wall_time_seconds")
		return r.wall_time_seconds + 0.0;
	return r.at(column);
}

} // namespace

std::string emit(const std::vector<RunRecord>& records, Format format)
{
	if (records.empty())
		throw std::invalid_argument("cannot emit an empty record list");
	const std::vector<std::string> columns = records.front().columns();
	for (const RunRecord& r : records)
		if (r.columns() != columns)
			throw std::invalid_argument("records do not share one column set");

	std::ostringstream os;
	if (format == Format::Csv) {
		for (std::size_t i = 0; i < columns.size(); ++i)
			os << (i ? "," : "") << columns[i];
		os << '\n';
		for (const RunRecord& r : records) {
			for (std::size_t i = 0; i < columns.size(); ++i)
				os << (i ? "," : "") << csv_field(cell(r, columns[i]));
			os << '\n';
		}
	} else {
		os << "[\n";
		for (std::size_t k = 0; k < records.size(); ++k) {
			os << "  {";
			for (std::size_t i = 0; i < columns.size(); ++i)
				os << (i ? ", " : "") << nlohmann::json(columns[i]).dump() << ": "
				   << json_field(cell(records[k], columns[i]));
			os << (k + 1 < records.size() ? "},\n" : "}\n");
		}
		os << "]\n";
	}
	return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
	namespace fs = std::filesystem;
	fs::path tmp = path;
	tmp += ".tmp";
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out)
			throw IoError("cannot open '" + tmp.string() + "' for writing");
		out.write(content.data(), static_cast<std::streamsize>(content.size()));
		out.flush();
		if (!out) {
			out.close();
			std::error_code ignored;
			fs::remove(tmp, ignored);
			throw IoError("failed writing '" + tmp.string() + "'");
		}
	}
	std::error_code ec;
	fs::rename(tmp, path, ec);
	if (ec) {
		std::error_code ignored;
		fs::remove(tmp, ignored);
		throw IoError("cannot move output into '" + path.string() + "': " + ec.message());
	}
}

std::filesystem::path summary_path(const std::filesystem::path& output)
{
	std::filesystem::path p = output;
	const auto ext = output.extension();
	p.replace_extension();
	p += ".summary";
	p += ext;
	return p;
}

} // namespace zenoberry::cli
