#pragma once

/// One row per run, and the CSV layer that stores them losslessly.

#include "ceda/benchmarks/optima_io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace ceda::experiment {

struct RunRecord {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;

  std::optional<std::size_t> p;
  std::optional<std::size_t> l;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<std::size_t> init_count;
  std::optional<double> accuracy;
  std::size_t max_fes = 0;

  std::size_t fes_used = 0;
  std::optional<double> fev;
  std::optional<std::size_t> clusters;
  /// Peak ratio per accuracy level; empty when the algorithm reports none.
  std::vector<double> pr;

  double wall_time = 0.0;
  std::string trace;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
  bool operator==(const RunRecord&) const = default;
};

/// "eps-1e-3" for 0.001; other values use their shortest decimal form.
inline std::string eps_column_name(double level) {
  const double k = -std::log10(level);
  const double kr = std::round(k);
  if (kr >= 1 && std::abs(k - kr) < 1e-12 && std::pow(10.0, -kr) == level) {
    return "eps-1e-" + std::to_string(static_cast<int>(kr));
  }
  return "eps-" + bench::format_double(level);
}

inline double eps_from_column_name(std::string_view name) {
  if (!name.starts_with("eps-")) throw std::invalid_argument("not an accuracy column: " + std::string(name));
  return bench::parse_double(name.substr(4));
}

/// "# generated 2026-01-01T00:00:00Z" for the current time. Readers and
/// reproducibility checks skip lines starting with '#'.
inline std::string timestamp_comment() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string("# generated ") + buf;
}

namespace detail {

inline std::string sanitize_field(std::string s) {
  for (char& c : s) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

template <class T>
std::string opt_field(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_floating_point_v<T>) {
    return bench::format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

inline std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + std::string(s) + "'");
  }
  return v;
}

inline std::optional<double> opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return bench::parse_double(s);
}

inline std::optional<std::size_t> opt_size(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_size(s);
}

inline const std::vector<std::string>& leading_columns() {
  static const std::vector<std::string> cols{"problem", "algorithm", "seed",     "p",        "l",
                                             "tau",     "alpha",     "init_count", "accuracy", "max_fes",
                                             "fes_used", "fev",      "clusters"};
  return cols;
}

inline const std::vector<std::string>& trailing_columns() {
  static const std::vector<std::string> cols{"wall_time", "trace", "status"};
  return cols;
}

}  // namespace detail

inline std::string records_header(const std::vector<double>& eps_levels) {
  std::string h;
  for (const auto& c : detail::leading_columns()) h += (h.empty() ? "" : ",") + c;
  for (double e : eps_levels) h += "," + eps_column_name(e);
  for (const auto& c : detail::trailing_columns()) h += "," + c;
  return h;
}

inline std::string record_row(const RunRecord& r, std::size_t level_count) {
  if (!r.pr.empty() && r.pr.size() != level_count) {
    throw std::invalid_argument("record_row: peak ratios do not match the accuracy levels");
  }
  std::ostringstream s;
  s << detail::sanitize_field(r.problem) << ',' << detail::sanitize_field(r.algorithm) << ',' << r.seed << ','
    << detail::opt_field(r.p) << ',' << detail::opt_field(r.l) << ',' << detail::opt_field(r.tau) << ','
    << detail::opt_field(r.alpha) << ',' << detail::opt_field(r.init_count) << ','
    << detail::opt_field(r.accuracy) << ',' << r.max_fes << ',' << r.fes_used << ',' << detail::opt_field(r.fev)
    << ',' << detail::opt_field(r.clusters);
  for (std::size_t i = 0; i < level_count; ++i) {
    s << ',';
    if (!r.pr.empty()) s << bench::format_double(r.pr[i]);
  }
  s << ',' << bench::format_double(r.wall_time) << ',' << detail::sanitize_field(r.trace) << ','
    << detail::sanitize_field(r.status);
  return s.str();
}

/// Writes `comment` (if non-empty), the header and one line per record.
inline void write_records(std::ostream& out, const std::vector<RunRecord>& records,
                          const std::vector<double>& eps_levels, const std::string& comment = {}) {
  if (!comment.empty()) out << comment << '\n';
  out << records_header(eps_levels) << '\n';
  for (const auto& r : records) out << record_row(r, eps_levels.size()) << '\n';
}

struct RecordTable {
  std::vector<double> eps_levels;
  std::vector<RunRecord> records;
};

inline RecordTable read_records(std::istream& in) {
  RecordTable table;
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    header = detail::split_csv(line);
    break;
  }
  const auto& lead = detail::leading_columns();
  const auto& trail = detail::trailing_columns();
  if (header.size() < lead.size() + trail.size()) throw std::invalid_argument("records: header too short");
  for (std::size_t i = 0; i < lead.size(); ++i) {
    if (header[i] != lead[i]) throw std::invalid_argument("records: unexpected column '" + header[i] + "'");
  }
  const std::size_t levels = header.size() - lead.size() - trail.size();
  for (std::size_t i = 0; i < levels; ++i) table.eps_levels.push_back(eps_from_column_name(header[lead.size() + i]));
  for (std::size_t i = 0; i < trail.size(); ++i) {
    if (header[lead.size() + levels + i] != trail[i]) {
      throw std::invalid_argument("records: unexpected column '" + header[lead.size() + levels + i] + "'");
    }
  }

  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto f = detail::split_csv(line);
    if (f.size() != header.size()) throw std::invalid_argument("records: wrong field count in '" + line + "'");
    RunRecord r;
    r.problem = f[0];
    r.algorithm = f[1];
    r.seed = detail::parse_u64(f[2]);
    r.p = detail::opt_size(f[3]);
    r.l = detail::opt_size(f[4]);
    r.tau = detail::opt_double(f[5]);
    r.alpha = detail::opt_double(f[6]);
    r.init_count = detail::opt_size(f[7]);
    r.accuracy = detail::opt_double(f[8]);
    r.max_fes = detail::parse_size(f[9]);
    r.fes_used = detail::parse_size(f[10]);
    r.fev = detail::opt_double(f[11]);
    r.clusters = detail::opt_size(f[12]);
    std::size_t blanks = 0;
    for (std::size_t i = 0; i < levels; ++i) blanks += f[lead.size() + i].empty() ? 1 : 0;
    if (blanks != 0 && blanks != levels) throw std::invalid_argument("records: partially empty accuracy columns");
    if (blanks == 0) {
      for (std::size_t i = 0; i < levels; ++i) r.pr.push_back(bench::parse_double(f[lead.size() + i]));
    }
    const std::size_t t = lead.size() + levels;
    r.wall_time = bench::parse_double(f[t]);
    r.trace = f[t + 1];
    r.status = f[t + 2];
    table.records.push_back(std::move(r));
  }
  return table;
}

}  // namespace ceda::experiment
