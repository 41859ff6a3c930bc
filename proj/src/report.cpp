#include "lzlab/report.hpp"

#include "lzlab/common.hpp"
#include "lzlab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace lzlab {

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(std::string_view text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  throw ValidationError("parity must be 'even' or 'odd'");
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ValidationError("format must be 'csv' or 'json'");
}

void Report::add_row(Json row) {
  for (const auto& c : columns)
    if (!row.contains(c)) throw InvariantError("report row is missing column '" + c + "'");
  rows.push_back(std::move(row));
}

std::string version_string() { return "lzlab 0.1.0"; }

namespace {
std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isnan(d)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
  }
  return v.dump();
}
}  // namespace

std::string to_csv(const Report& report) {
  std::ostringstream os;
  for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << report.columns[i];
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << csv_cell(row.at(report.columns[i]));
    os << '\n';
  }
  return os.str();
}

Json to_json(const Report& report) {
  Json j;
  j["command"] = report.command;
  j["config"] = report.config;
  j["columns"] = report.columns;
  j["rows"] = Json::array();
  for (const auto& r : report.rows) j["rows"].push_back(r);
  j["wall_clock_s"] = report.wall_clock_s;
  j["version"] = report.version;
  j["workers"] = report.workers;
  j["status"] = report.all_pass() ? "pass" : "fail";
  j["failures"] = report.failures;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.config = j.at("config");
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) r.rows.push_back(row);
  r.wall_clock_s = j.at("wall_clock_s").get<double>();
  r.version = j.at("version").get<std::string>();
  r.workers = j.at("workers").get<int>();
  r.failures = j.at("failures").get<std::vector<std::string>>();
  return r;
}

void emit_report(const Report& report, const std::string& path, OutputFormat format, std::ostream& out) {
  const std::string body = format == OutputFormat::csv ? to_csv(report) : to_json(report).dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << body;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output path: " + path);
  file << body;
  if (!file) throw std::runtime_error("write failed for output path: " + path);
}

}  // namespace lzlab
