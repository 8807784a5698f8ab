#include "ceda/experiment/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace ex = ceda::experiment;

namespace {

/// Flags shared by every verb that runs something. Each one overrides the
/// config key of the same name.
struct Overrides {
  std::string config;
  std::vector<std::string> problems;
  std::optional<std::string> algorithm;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> jobs;
  std::optional<std::size_t> p;
  std::optional<std::size_t> l;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<std::size_t> init_count;
  std::optional<double> accuracy;
  std::optional<std::size_t> max_fes;
  std::vector<double> eps_levels;
  std::vector<std::size_t> sweep_p;
  std::vector<std::size_t> sweep_l;
  bool trace = false;
  bool timing = false;
};

void add_overrides(CLI::App& cmd, Overrides& o, bool with_algorithm) {
  cmd.add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
  cmd.add_option("--problem", o.problems, "problem id, e.g. cec2013/f6 (repeatable)");
  if (with_algorithm) cmd.add_option("--algorithm", o.algorithm, "eda2 | ceda2 | dsts-demo");
  cmd.add_option("--runs", o.runs, "independent runs per problem");
  cmd.add_option("--seed", o.seed, "base seed; run r uses seed + r");
  cmd.add_option("--out", o.out, "output directory");
  cmd.add_option("--jobs", o.jobs, "concurrent runs");
  cmd.add_option("--p", o.p, "population size");
  cmd.add_option("--l", o.l, "archive length");
  cmd.add_option("--tau", o.tau, "selection ratio");
  cmd.add_option("--alpha", o.alpha, "clustering threshold factor");
  cmd.add_option("--init_count", o.init_count, "uniform samples per restart");
  cmd.add_option("--accuracy", o.accuracy, "stagnation accuracy");
  cmd.add_option("--max_fes", o.max_fes, "evaluation budget per run");
  cmd.add_option("--eps_levels", o.eps_levels, "accuracy levels for peak counting");
  cmd.add_option("--sweep_p", o.sweep_p, "population sizes for sweep");
  cmd.add_option("--sweep_l", o.sweep_l, "archive lengths for sweep");
  cmd.add_flag("--trace", o.trace, "write per-run trace CSVs");
  cmd.add_flag("--timing", o.timing, "record wall time");
}

ex::ExperimentConfig build_config(const Overrides& o) {
  ex::ExperimentConfig c = o.config.empty() ? ex::ExperimentConfig{} : ex::load_config(o.config);
  if (!o.problems.empty()) c.problems = o.problems;
  if (o.algorithm) c.algorithm = ex::parse_algorithm(*o.algorithm);
  if (o.runs) c.runs = *o.runs;
  if (o.seed) c.base_seed = *o.seed;
  if (o.out) c.out = *o.out;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.p) c.p = o.p;
  if (o.l) c.l = o.l;
  if (o.tau) c.tau = o.tau;
  if (o.alpha) c.alpha = o.alpha;
  if (o.init_count) c.init_count = o.init_count;
  if (o.accuracy) c.accuracy = o.accuracy;
  if (o.max_fes) c.max_fes = o.max_fes;
  if (!o.eps_levels.empty()) c.eps_levels = o.eps_levels;
  if (!o.sweep_p.empty()) c.sweep_p = o.sweep_p;
  if (!o.sweep_l.empty()) c.sweep_l = o.sweep_l;
  if (o.trace) c.trace = true;
  if (o.timing) c.timing = true;
  return c;
}

int finish(const ex::ExperimentOutput& out) {
  std::size_t failed = 0;
  for (const auto& r : out.records) {
    if (!r.ok()) {
      ++failed;
      std::cerr << r.problem << " seed " << r.seed << ": " << r.status << '\n';
    }
  }
  if (out.summary) ex::print_summary(std::cout, *out.summary);
  std::cout << "records: " << out.records_csv.string() << '\n';
  if (!out.summary_csv.empty()) std::cout << "summary: " << out.summary_csv.string() << '\n';
  if (failed > 0) {
    std::cerr << failed << " of " << out.records.size() << " runs failed\n";
    return 1;
  }
  return 0;
}

int report(const std::vector<std::string>& inputs, const std::optional<std::string>& out) {
  std::vector<ex::RunRecord> records;
  std::vector<double> levels;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw ex::ConfigError("cannot read " + path);
    auto table = ex::read_records(in);
    if (!records.empty() && table.eps_levels != levels) {
      throw std::invalid_argument("report: inputs use different accuracy levels");
    }
    levels = table.eps_levels;
    records.insert(records.end(), table.records.begin(), table.records.end());
  }
  const auto summary = ex::summarize(records, levels);
  ex::print_summary(std::cout, summary);
  if (out) {
    std::ofstream f(*out);
    if (!f) throw ex::ConfigError("cannot write " + *out);
    ex::write_summary(f, summary, ex::timestamp_comment());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeded experiments for the archive-based EDA and its clustering niching variant"};
  app.require_subcommand(1);

  Overrides run_o, sweep_o, demo_o;
  auto* run = app.add_subcommand("run", "execute an experiment config");
  add_overrides(*run, run_o, true);
  auto* sweep = app.add_subcommand("sweep", "EDA2 over the (p x l) grid");
  add_overrides(*sweep, sweep_o, false);
  auto* demo = app.add_subcommand("demo-cluster", "decision-graph and partition CSVs of one clustering");
  add_overrides(*demo, demo_o, false);

  std::vector<std::string> report_inputs;
  std::optional<std::string> report_out;
  auto* rep = app.add_subcommand("report", "summarize existing records CSVs");
  rep->add_option("records", report_inputs, "records.csv files")->required()->check(CLI::ExistingFile);
  rep->add_option("--out", report_out, "write the summary CSV here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return finish(ex::run_experiment(build_config(run_o)));
    if (*sweep) return finish(ex::run_sweep(build_config(sweep_o)));
    if (*demo) {
      auto c = build_config(demo_o);
      c.algorithm = ex::Algorithm::dsts_demo;
      if (c.problems.empty()) c.problems = {"cec2013/f5"};
      const auto out = ex::run_experiment(c);
      for (const auto& r : out.records) {
        if (r.ok()) std::cout << r.problem << " seed " << r.seed << ": " << *r.clusters << " clusters\n";
      }
      return finish(out);
    }
    if (*rep) return report(report_inputs, report_out);
  } catch (const ex::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
