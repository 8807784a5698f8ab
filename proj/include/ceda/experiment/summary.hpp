#pragma once

/// Per-group statistics of run records: functions as rows, accuracy
/// levels (or FEV) as columns, plus an "Average" footer row.

#include "ceda/core.hpp"
#include "ceda/experiment/record.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda::experiment {

enum class MetricKind { peak_ratio, fev, clusters };

inline MetricKind metric_kind(const RunRecord& r) {
  if (!r.pr.empty()) return MetricKind::peak_ratio;
  if (r.fev) return MetricKind::fev;
  if (r.clusters) return MetricKind::clusters;
  throw std::invalid_argument("summarize: record without a metric");
}

struct Stats {
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

inline Stats describe(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("describe: no values");
  Stats s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  s.median = ceda::median(std::move(values));
  return s;
}

struct SummaryRow {
  std::string problem;
  std::string algorithm;
  std::optional<std::size_t> p;
  std::optional<std::size_t> l;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<std::size_t> init_count;
  std::optional<double> accuracy;
  std::size_t max_fes = 0;
  std::size_t runs = 0;
  std::vector<Stats> columns;

  bool same_group(const RunRecord& r) const {
    return problem == r.problem && algorithm == r.algorithm && p == r.p && l == r.l && tau == r.tau &&
           alpha == r.alpha && init_count == r.init_count && accuracy == r.accuracy && max_fes == r.max_fes;
  }
};

struct SummaryTable {
  MetricKind kind = MetricKind::peak_ratio;
  std::vector<std::string> column_names;
  std::vector<SummaryRow> rows;
  /// Column-wise average of every statistic over the rows.
  std::vector<Stats> average;
};

/// Groups successful records by (problem, algorithm, parameters) in order
/// of first appearance. Records must all report the same kind of metric
/// from the same algorithm.
inline SummaryTable summarize(const std::vector<RunRecord>& records, const std::vector<double>& eps_levels) {
  std::vector<const RunRecord*> ok;
  for (const auto& r : records) {
    if (r.ok()) ok.push_back(&r);
  }
  if (ok.empty()) throw std::invalid_argument("summarize: no successful records");

  SummaryTable table;
  table.kind = metric_kind(*ok.front());
  for (const auto* r : ok) {
    if (r->algorithm != ok.front()->algorithm) throw std::invalid_argument("summarize: mixed algorithms");
    if (metric_kind(*r) != table.kind) throw std::invalid_argument("summarize: mixed metric kinds");
    if (table.kind == MetricKind::peak_ratio && r->pr.size() != eps_levels.size()) {
      throw std::invalid_argument("summarize: peak ratios do not match the accuracy levels");
    }
  }

  switch (table.kind) {
    case MetricKind::peak_ratio:
      for (double e : eps_levels) table.column_names.push_back(eps_column_name(e));
      break;
    case MetricKind::fev: table.column_names.push_back("fev"); break;
    case MetricKind::clusters: table.column_names.push_back("clusters"); break;
  }
  const std::size_t ncol = table.column_names.size();

  std::vector<std::vector<std::vector<double>>> values;
  for (const auto* r : ok) {
    auto it = std::find_if(table.rows.begin(), table.rows.end(), [&](const SummaryRow& row) { return row.same_group(*r); });
    std::size_t g = static_cast<std::size_t>(it - table.rows.begin());
    if (it == table.rows.end()) {
      table.rows.push_back({r->problem, r->algorithm, r->p, r->l, r->tau, r->alpha, r->init_count, r->accuracy,
                            r->max_fes, 0, {}});
      values.emplace_back(ncol);
    }
    ++table.rows[g].runs;
    for (std::size_t c = 0; c < ncol; ++c) {
      switch (table.kind) {
        case MetricKind::peak_ratio: values[g][c].push_back(r->pr[c]); break;
        case MetricKind::fev: values[g][c].push_back(*r->fev); break;
        case MetricKind::clusters: values[g][c].push_back(static_cast<double>(*r->clusters)); break;
      }
    }
  }

  table.average.assign(ncol, Stats{});
  for (std::size_t g = 0; g < table.rows.size(); ++g) {
    for (std::size_t c = 0; c < ncol; ++c) {
      const Stats s = describe(std::move(values[g][c]));
      table.rows[g].columns.push_back(s);
      table.average[c].mean += s.mean;
      table.average[c].median += s.median;
      table.average[c].min += s.min;
      table.average[c].max += s.max;
    }
  }
  const auto n = static_cast<double>(table.rows.size());
  for (auto& s : table.average) {
    s.mean /= n;
    s.median /= n;
    s.min /= n;
    s.max /= n;
  }
  return table;
}

inline void write_summary(std::ostream& out, const SummaryTable& t, const std::string& comment = {}) {
  if (!comment.empty()) out << comment << '\n';
  out << "problem,algorithm,p,l,tau,alpha,init_count,accuracy,max_fes,runs";
  for (const auto& c : t.column_names) out << ',' << c << "-mean," << c << "-median," << c << "-min," << c << "-max";
  out << '\n';
  auto stats = [&](const std::vector<Stats>& cols) {
    for (const auto& s : cols) {
      out << ',' << bench::format_double(s.mean) << ',' << bench::format_double(s.median) << ','
          << bench::format_double(s.min) << ',' << bench::format_double(s.max);
    }
  };
  std::size_t total = 0;
  for (const auto& r : t.rows) {
    out << r.problem << ',' << r.algorithm << ',' << detail::opt_field(r.p) << ',' << detail::opt_field(r.l) << ','
        << detail::opt_field(r.tau) << ',' << detail::opt_field(r.alpha) << ',' << detail::opt_field(r.init_count)
        << ',' << detail::opt_field(r.accuracy) << ',' << r.max_fes << ',' << r.runs;
    stats(r.columns);
    out << '\n';
    total += r.runs;
  }
  out << "Average,,,,,,,,," << total;
  stats(t.average);
  out << '\n';
}

/// Human-readable table of column means, three decimals.
inline void print_summary(std::ostream& out, const SummaryTable& t) {
  std::size_t width = 8;
  for (const auto& r : t.rows) width = std::max(width, r.problem.size() + 2);
  auto pad = [&](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  out << pad("Fun.", width);
  for (const auto& c : t.column_names) out << pad(c, 12);
  out << '\n';
  char buf[64];
  auto cell = [&](double v) {
    if (t.kind == MetricKind::fev) {
      std::snprintf(buf, sizeof(buf), "%.3e", v);
    } else {
      std::snprintf(buf, sizeof(buf), "%.3f", v);
    }
    return pad(buf, 12);
  };
  for (const auto& r : t.rows) {
    out << pad(r.problem, width);
    for (const auto& s : r.columns) out << cell(s.mean);
    out << '\n';
  }
  out << pad("Average", width);
  for (const auto& s : t.average) out << cell(s.mean);
  out << '\n';
}

}  // namespace ceda::experiment
