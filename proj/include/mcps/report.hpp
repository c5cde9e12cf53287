#pragma once

// Report emission.
//
// csv:          size,solver,instances,percent_valid,median_switches,
//               median_improvement,median_wall_time_ms  (UTF-8, LF, '.')
//               Numbers use the shortest representation that reads back to
//               the same double; an empty wall-time field means "not timed".
// plot-data:    JSON, per solver an array of [N, median improvement] pairs
//               sorted by N, plus the random baseline per size.
// structured:   JSON array of the aggregate rows.

#include <charconv>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcps/benchmark.hpp"
#include "mcps/error.hpp"
#include "mcps/instance_io.hpp"

namespace mcps {

enum class ReportFormat { Csv, Structured, PlotData };

inline constexpr std::string_view kCsvHeader =
    "size,solver,instances,percent_valid,median_switches,median_improvement,median_wall_time_ms";

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline std::string to_csv(std::span<const AggregateRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.size) + ',' + r.solver + ',' + std::to_string(r.instances) + ',' +
           format_number(r.percent_valid) + ',' + format_number(r.median_switches) + ',' +
           format_number(r.median_improvement) + ',' +
           (r.median_wall_time_ms ? format_number(*r.median_wall_time_ms) : std::string()) + '\n';
  }
  return out;
}

namespace detail {

inline double parse_double_field(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("csv line " + std::to_string(line) + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

inline std::size_t parse_count_field(std::string_view s, std::size_t line) {
  auto v = parse_uint(s);
  if (!v) throw InputError("csv line " + std::to_string(line) + ": '" + std::string(s) + "' is not a count");
  return static_cast<std::size_t>(*v);
}

}  // namespace detail

inline std::vector<AggregateRow> parse_csv(std::string_view text) {
  std::vector<AggregateRow> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line_no == 1) {
      if (line != kCsvHeader) throw InputError("csv: unexpected header '" + std::string(line) + "'");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (f.size() != 7) {
      throw InputError("csv line " + std::to_string(line_no) + ": expected 7 fields, got " +
                       std::to_string(f.size()));
    }
    AggregateRow r;
    r.size = detail::parse_count_field(f[0], line_no);
    r.solver = std::string(f[1]);
    r.instances = detail::parse_count_field(f[2], line_no);
    r.percent_valid = detail::parse_double_field(f[3], line_no);
    r.median_switches = detail::parse_double_field(f[4], line_no);
    r.median_improvement = detail::parse_double_field(f[5], line_no);
    if (!f[6].empty()) r.median_wall_time_ms = detail::parse_double_field(f[6], line_no);
    rows.push_back(std::move(r));
  }
  if (line_no == 0) throw InputError("csv: empty input");
  return rows;
}

inline std::string to_plot_data(std::span<const AggregateRow> rows,
                                 const std::map<std::size_t, double>& baseline = {}) {
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> series;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (!series.contains(r.solver)) order.push_back(r.solver);
    series[r.solver].emplace_back(r.size, r.median_improvement);
  }
  nlohmann::ordered_json doc;
  doc["x"] = "cars";
  doc["y"] = "median improvement over random (color switches)";
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& name : order) {
    auto points = series[name];
    std::sort(points.begin(), points.end());
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [n, y] : points) arr.push_back({n, y});
    s[name] = std::move(arr);
  }
  doc["series"] = std::move(s);
  nlohmann::ordered_json base = nlohmann::ordered_json::array();
  for (const auto& [n, y] : baseline) base.push_back({n, y});
  doc["random_baseline_switches"] = std::move(base);
  return doc.dump() + "\n";
}

inline std::string to_structured(std::span<const AggregateRow> rows,
                                 const std::map<std::size_t, double>& baseline = {}) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["size"] = r.size;
    o["solver"] = r.solver;
    o["instances"] = r.instances;
    o["percent_valid"] = r.percent_valid;
    o["median_switches"] = r.median_switches;
    o["median_improvement"] = r.median_improvement;
    o["median_wall_time_ms"] = r.median_wall_time_ms ? nlohmann::ordered_json(*r.median_wall_time_ms)
                                                     : nlohmann::ordered_json(nullptr);
    if (auto it = baseline.find(r.size); it != baseline.end()) o["median_random_baseline"] = it->second;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

inline std::string render_report(std::span<const AggregateRow> rows, ReportFormat format,
                                 const std::map<std::size_t, double>& baseline = {}) {
  if (rows.empty()) throw InputError("report: no rows");
  switch (format) {
    case ReportFormat::Csv: return to_csv(rows);
    case ReportFormat::PlotData: return to_plot_data(rows, baseline);
    case ReportFormat::Structured: return to_structured(rows, baseline);
  }
  return {};
}

inline void emit_report(std::span<const AggregateRow> rows, ReportFormat format,
                        const std::filesystem::path& path,
                        const std::map<std::size_t, double>& baseline = {}) {
  detail::write_file(path, render_report(rows, format, baseline));
}

// Human-readable table for terminals.
inline std::string format_table(std::span<const AggregateRow> rows,
                                const std::map<std::size_t, double>& baseline = {}) {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%6s  %-7s %9s %8s %10s %12s\n", "N", "solver", "instances",
                "%valid", "median f", "median impr");
  os << line;
  std::size_t last = 0;
  for (const auto& r : rows) {
    if (r.size != last && baseline.contains(r.size)) {
      std::snprintf(line, sizeof line, "%6zu  %-7s %9s %8s %10.3f %12s\n", r.size, "(base)", "-", "-",
                    baseline.at(r.size), "-");
      os << line;
    }
    last = r.size;
    std::snprintf(line, sizeof line, "%6zu  %-7s %9zu %7.1f%% %10.3g %12.4g\n", r.size, r.solver.c_str(),
                  r.instances, r.percent_valid, r.median_switches, r.median_improvement);
    os << line;
  }
  return os.str();
}

}  // namespace mcps
