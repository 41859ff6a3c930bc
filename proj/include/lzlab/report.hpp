#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lzlab {

using Json = nlohmann::ordered_json;

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);

/// Result table of one experiment. Rows are objects keyed by `columns`.
struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<std::string> columns;
  std::vector<Json> rows;
  double wall_clock_s = 0.0;
  std::string version;
  int workers = 1;
  /// Names of failed gates; empty means all pass.
  std::vector<std::string> failures;

  void add_row(Json row);
  bool all_pass() const { return failures.empty(); }
};

std::string version_string();

/// Header plus one line per row; numbers printed with 17 significant digits.
std::string to_csv(const Report& report);
Json to_json(const Report& report);
Report report_from_json(const Json& j);

/// Writes to `path`, or to `out` when path is empty or "-". Throws std::runtime_error naming the path on IO failure.
void emit_report(const Report& report, const std::string& path, OutputFormat format, std::ostream& out);

}  // namespace lzlab
