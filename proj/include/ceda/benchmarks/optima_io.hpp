#pragma once

/// Plain-text optima tables: one vector per line, coordinates
/// separated by single spaces, shortest round-trip decimal form.

#include "ceda/core.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda::bench {

/// Shortest decimal string that parses back to exactly `x`.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return x;
}

inline void write_optima_table(std::ostream& out, const std::vector<Vector>& optima) {
  for (const auto& o : optima) {
    for (Eigen::Index i = 0; i < o.size(); ++i) {
      if (i > 0) out << ' ';
      out << format_double(o[i]);
    }
    out << '\n';
  }
}

inline std::vector<Vector> read_optima_table(std::istream& in) {
  std::vector<Vector> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    std::vector<double> values;
    std::string tok;
    while (ls >> tok) values.push_back(parse_double(tok));
    if (values.empty()) continue;
    if (!out.empty() && static_cast<std::size_t>(out.front().size()) != values.size()) {
      throw std::invalid_argument("optima table: inconsistent row lengths");
    }
    out.push_back(Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
  }
  return out;
}

inline void save_optima_table(const std::filesystem::path& path, const std::vector<Vector>& optima) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_optima_table(out, optima);
}

inline std::vector<Vector> load_optima_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_optima_table(in);
}

}  // namespace ceda::bench
