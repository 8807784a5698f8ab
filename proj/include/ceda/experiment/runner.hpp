#pragma once

/// Seeded repeated runs, (p x l) sweeps and the clustering demo,
/// executed on a small worker pool and written out as CSV.

#include "ceda/benchmarks/registry.hpp"
#include "ceda/dsts.hpp"
#include "ceda/eda2.hpp"
#include "ceda/experiment/config.hpp"
#include "ceda/experiment/record.hpp"
#include "ceda/experiment/summary.hpp"
#include "ceda/niching.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace ceda::experiment {

inline constexpr std::size_t kEda2DefaultPopulation = 80;
inline constexpr std::size_t kEda2DefaultArchive = 10;
inline constexpr std::size_t kDemoDefaultSamples = 1000;

/// "cec2013/f5" -> "cec2013_f5".
inline std::string file_tag(std::string id) {
  for (char& c : id) {
    if (c == '/' || c == '\\' || c == ' ' || c == ',') c = '_';
  }
  return id;
}

inline bench::Problem resolve_problem(const std::string& id, const ExperimentConfig& config) {
  bench::Problem p;
  try {
    p = bench::make_problem(id);
  } catch (const bench::UnknownProblem& e) {
    throw ConfigError(e.what());
  }
  if (config.max_fes) p.max_fes = *config.max_fes;
  return p;
}

inline Eda2Params eda2_params(const ExperimentConfig& c, Sense sense) {
  Eda2Params params;
  params.population_size = c.p.value_or(kEda2DefaultPopulation);
  params.archive_length = c.l.value_or(kEda2DefaultArchive);
  params.selection_ratio = c.tau.value_or(params.selection_ratio);
  params.sense = sense;
  return params;
}

inline Ceda2Config ceda2_config(const ExperimentConfig& c, Eigen::Index dimension) {
  Ceda2Config cfg;
  if (c.init_count) cfg.init_count = *c.init_count;
  if (c.tau) cfg.selection_ratio = *c.tau;
  if (c.alpha) cfg.alpha = *c.alpha;
  if (c.p) cfg.cluster_population = *c.p;
  if (c.l) cfg.cluster_archive_length = *c.l;
  if (c.accuracy) cfg.accuracy = *c.accuracy;
  return cfg.resolved(dimension);
}

namespace detail {

inline void ensure_writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("output directory " + dir.string() + " cannot be created");
  }
  const auto probe = dir / ".write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw ConfigError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

inline RunRecord run_eda2_once(const bench::Problem& problem, const ExperimentConfig& c, std::uint64_t seed,
                               RunRecord r) {
  const Eda2Params params = eda2_params(c, problem.sense);
  r.p = params.population_size;
  r.l = params.archive_length;
  r.tau = params.selection_ratio;

  Rng rng(seed);
  EvalBudget budget(problem.max_fes);
  TerminationPolicy termination;
  termination.max_fes = problem.max_fes;
  const auto result = run_eda2(problem.objective, problem.bounds, params, termination, std::nullopt, budget, rng);
  r.fes_used = result.fes_used;
  r.fev = fev(result.best, problem);

  if (c.trace) {
    r.trace = "traces/" + file_tag(problem.name) + "_eda2_p" + std::to_string(params.population_size) + "_l" +
              std::to_string(params.archive_length) + "_s" + std::to_string(seed) + ".csv";
    auto out = open_out(c.out / r.trace);
    out << "generation,fes_used,best,median,mean,fev\n";
    for (const auto& g : result.history) {
      const double err = std::abs(g.best - problem.global_optimum_value);
      out << g.generation << ',' << g.fes_used << ',' << bench::format_double(g.best) << ','
          << bench::format_double(g.median) << ',' << bench::format_double(g.mean) << ','
          << bench::format_double(err < kFevZeroThreshold ? 0.0 : err) << '\n';
    }
  }
  return r;
}

inline RunRecord run_ceda2_once(const bench::Problem& problem, const ExperimentConfig& c, std::uint64_t seed,
                                RunRecord r) {
  const Ceda2Config cfg = ceda2_config(c, problem.dimension());
  r.p = cfg.cluster_population;
  r.l = cfg.cluster_archive_length;
  r.tau = cfg.selection_ratio;
  r.alpha = cfg.alpha;
  r.init_count = cfg.init_count;
  r.accuracy = cfg.accuracy;

  Rng rng(seed);
  std::vector<RestartRecord> restarts;
  const auto archive = run_ceda2(problem, cfg, rng, [&](const RestartRecord& rec) { restarts.push_back(rec); });
  r.fes_used = restarts.empty() ? 0 : restarts.back().fes_used;
  std::size_t clusters = 0;
  for (const auto& rec : restarts) clusters += rec.clusters;
  r.clusters = clusters;
  for (double eps : c.eps_levels) r.pr.push_back(peak_ratio(archive, problem, eps).peak_ratio);
  for (const auto& e : archive.entries) {
    const double v = fev(e, problem);
    if (!r.fev || v < *r.fev) r.fev = v;
  }

  if (c.trace) {
    r.trace = "traces/" + file_tag(problem.name) + "_ceda2_s" + std::to_string(seed) + ".csv";
    auto out = open_out(c.out / r.trace);
    out << "restart,clusters,fes_used,archive_size\n";
    for (const auto& rec : restarts) {
      out << rec.restart << ',' << rec.clusters << ',' << rec.fes_used << ',' << rec.archive_size << '\n';
    }
  }
  return r;
}

}  // namespace detail

/// Output of the clustering demo for one uniform sample.
struct DemoResult {
  std::vector<Individual> selected;
  dsts::ClusteringResult clustering;
};

inline DemoResult clustering_demo(const bench::Problem& problem, std::size_t samples, double ratio, double alpha,
                                  std::uint64_t seed) {
  Rng rng(seed);
  EvalBudget budget(samples);
  std::vector<Individual> population(samples);
  for (auto& ind : population) {
    ind.genome = uniform_in(problem.bounds, rng);
    ind.fitness = bench::evaluate(problem, ind.genome, budget);
    ind.eval_index = budget.used();
  }
  DemoResult out;
  out.selected = truncation_select(population, ratio, problem.sense).members;
  dsts::ClusteringInput input;
  input.sense = problem.sense;
  input.alpha = alpha;
  for (const auto& ind : out.selected) {
    input.points.push_back(ind.genome);
    input.fitness.push_back(ind.fitness);
  }
  out.clustering = dsts::cluster(input);
  return out;
}

/// Writes index,fitness,delta,is_center (the decision graph) and
/// index,x0..x{n-1},fitness,label,is_center (the partition).
inline void write_demo(const DemoResult& demo, const std::filesystem::path& decision_graph,
                       const std::filesystem::path& clusters) {
  std::vector<bool> is_center(demo.selected.size(), false);
  for (auto c : demo.clustering.centers) is_center[c] = true;
  {
    auto out = detail::open_out(decision_graph);
    out << "index,fitness,delta,is_center\n";
    for (std::size_t i = 0; i < demo.selected.size(); ++i) {
      out << i << ',' << bench::format_double(demo.selected[i].fitness) << ','
          << bench::format_double(demo.clustering.deltas[i]) << ',' << (is_center[i] ? 1 : 0) << '\n';
    }
  }
  auto out = detail::open_out(clusters);
  const auto dim = demo.selected.empty() ? 0 : demo.selected.front().genome.size();
  out << "index";
  for (Eigen::Index k = 0; k < dim; ++k) out << ",x" << k;
  out << ",fitness,label,is_center\n";
  for (std::size_t i = 0; i < demo.selected.size(); ++i) {
    out << i;
    for (Eigen::Index k = 0; k < dim; ++k) out << ',' << bench::format_double(demo.selected[i].genome[k]);
    out << ',' << bench::format_double(demo.selected[i].fitness) << ',' << demo.clustering.labels[i] << ','
        << (is_center[i] ? 1 : 0) << '\n';
  }
}

namespace detail {

inline RunRecord run_demo_once(const bench::Problem& problem, const ExperimentConfig& c, std::uint64_t seed,
                               RunRecord r) {
  const std::size_t samples = c.init_count.value_or(kDemoDefaultSamples);
  const double tau = c.tau.value_or(0.35);
  const double alpha = c.alpha.value_or(0.8);
  r.init_count = samples;
  r.tau = tau;
  r.alpha = alpha;
  const auto demo = clustering_demo(problem, samples, tau, alpha, seed);
  r.fes_used = samples;
  r.clusters = demo.clustering.cluster_count();
  const std::string tag = file_tag(problem.name) + "_s" + std::to_string(seed);
  write_demo(demo, c.out / (tag + "_decision_graph.csv"), c.out / (tag + "_clusters.csv"));
  r.trace = tag + "_clusters.csv";
  return r;
}

}  // namespace detail

/// Runs one seeded job and never throws: failures land in `status`.
inline RunRecord run_single(const bench::Problem& problem, const ExperimentConfig& config, std::uint64_t seed) {
  RunRecord r;
  r.problem = problem.name;
  r.algorithm = to_string(config.algorithm);
  r.seed = seed;
  r.max_fes = problem.max_fes;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.algorithm) {
      case Algorithm::eda2: r = detail::run_eda2_once(problem, config, seed, r); break;
      case Algorithm::ceda2: r = detail::run_ceda2_once(problem, config, seed, r); break;
      case Algorithm::dsts_demo: r = detail::run_demo_once(problem, config, seed, r); break;
    }
  } catch (const std::exception& e) {
    r.status = std::string("error: ") + e.what();
  }
  if (config.timing) {
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

struct Job {
  std::size_t problem = 0;
  std::uint64_t seed = 0;
  ExperimentConfig config;
};

/// Executes `jobs` on up to `workers` threads; results keep job order.
inline std::vector<RunRecord> execute(const std::vector<bench::Problem>& problems, const std::vector<Job>& jobs,
                                      std::size_t workers) {
  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      records[i] = run_single(problems[jobs[i].problem], jobs[i].config, jobs[i].seed);
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

struct ExperimentOutput {
  std::vector<RunRecord> records;
  std::optional<SummaryTable> summary;
  std::filesystem::path records_csv;
  std::filesystem::path summary_csv;

  bool any_error() const {
    for (const auto& r : records) {
      if (!r.ok()) return true;
    }
    return false;
  }
};

namespace detail {

/// Everything that can be checked without running: problem ids, output
/// directory, and the parameter set each problem would be run with.
inline std::vector<bench::Problem> prepare(const ExperimentConfig& config) {
  config.validate();
  std::vector<bench::Problem> problems;
  for (const auto& id : config.problems) problems.push_back(resolve_problem(id, config));
  try {
    for (const auto& p : problems) {
      if (config.algorithm == Algorithm::eda2) eda2_params(config, p.sense).validate();
      if (config.algorithm == Algorithm::ceda2) ceda2_config(config, p.dimension()).validate();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  ensure_writable_dir(config.out);
  if (config.trace) ensure_writable_dir(config.out / "traces");
  return problems;
}

inline void write_outputs(const ExperimentConfig& config, ExperimentOutput& out, const std::string& summary_name) {
  const std::string stamp = timestamp_comment();
  out.records_csv = config.out / "records.csv";
  {
    auto f = open_out(out.records_csv);
    write_records(f, out.records, config.eps_levels, stamp);
  }
  bool any_ok = false;
  for (const auto& r : out.records) any_ok = any_ok || r.ok();
  if (!any_ok) return;
  out.summary = summarize(out.records, config.eps_levels);
  out.summary_csv = config.out / summary_name;
  auto f = open_out(out.summary_csv);
  write_summary(f, *out.summary, stamp);
}

}  // namespace detail

/// Runs every problem `runs` times (seed base_seed + r), then writes
/// records.csv and summary.csv into the output directory. Configuration
/// problems throw ConfigError before any run starts; run failures are
/// recorded per run.
inline ExperimentOutput run_experiment(const ExperimentConfig& config) {
  const auto problems = detail::prepare(config);
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    for (std::size_t r = 0; r < config.runs; ++r) jobs.push_back({i, config.seed_for(r), config});
  }
  ExperimentOutput out;
  out.records = execute(problems, jobs, config.jobs);
  detail::write_outputs(config, out, "summary.csv");
  return out;
}

/// EDA2 over the cartesian grid sweep_p x sweep_l, `runs` seeds per cell.
/// Writes records.csv and grid.csv (one summary row per cell).
inline ExperimentOutput run_sweep(const ExperimentConfig& config) {
  ExperimentConfig base = config;
  base.algorithm = Algorithm::eda2;
  const auto problems = detail::prepare(base);
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    for (auto p : base.sweep_p) {
      for (auto l : base.sweep_l) {
        ExperimentConfig cell = base;
        cell.p = p;
        cell.l = l;
        try {
          eda2_params(cell, problems[i].sense).validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        for (std::size_t r = 0; r < base.runs; ++r) jobs.push_back({i, base.seed_for(r), cell});
      }
    }
  }
  ExperimentOutput out;
  out.records = execute(problems, jobs, base.jobs);
  detail::write_outputs(base, out, "grid.csv");
  return out;
}

}  // namespace ceda::experiment
