#pragma once

/// Restart-based niching driver (cluster the best of a uniform
/// sample, evolve each cluster with the archive EDA) and multimodal metrics.

#include "ceda/benchmarks/problem.hpp"
#include "ceda/core.hpp"
#include "ceda/dsts.hpp"
#include "ceda/eda2.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ceda {

struct Ceda2Config {
  /// Uniform samples per restart; 0 selects 1000 + 10 D^2.
  std::size_t init_count = 0;
  double selection_ratio = 0.35;
  double alpha = 0.8;
  /// Per-cluster population; 0 selects 4 (D + 1).
  std::size_t cluster_population = 0;
  std::size_t cluster_archive_length = 5;
  /// Per-cluster runs stop once the population median stays within a band
  /// narrower than this over `stagnation_window` generations.
  double accuracy = 1e-6;
  std::size_t stagnation_window = 5;

  /// Copy with the dimension-dependent defaults filled in.
  Ceda2Config resolved(Eigen::Index dimension) const {
    Ceda2Config c = *this;
    const auto d = static_cast<std::size_t>(dimension);
    if (c.init_count == 0) c.init_count = 1000 + 10 * d * d;
    if (c.cluster_population == 0) c.cluster_population = 4 * (d + 1);
    return c;
  }

  void validate() const {
    if (init_count < 2) throw std::invalid_argument("Ceda2Config: init_count must be >= 2");
    if (selection_count(selection_ratio, init_count) < 1) {
      throw std::invalid_argument("Ceda2Config: selection_ratio * init_count must be >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("Ceda2Config: alpha must lie in (0, 1)");
    if (!(accuracy >= 0.0)) throw std::invalid_argument("Ceda2Config: accuracy must be >= 0");
    Eda2Params{cluster_population, selection_ratio, cluster_archive_length}.validate();
  }
};

/// Best solution of every finished cluster run, in completion order.
struct SolutionArchive {
  std::vector<Individual> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

struct RestartRecord {
  std::size_t restart = 0;
  std::size_t clusters = 0;
  std::size_t fes_used = 0;  // cumulative, at the end of the restart
  std::size_t archive_size = 0;
};

/// Everything one restart produces. Restarts share nothing but the budget
/// and the random stream.
struct RestartOutcome {
  std::vector<Individual> cluster_bests;
  std::size_t clusters = 0;
};

/// One restart: uniform sample, truncation, clustering, and one seeded EDA
/// run per cluster in descending center fitness. A cluster interrupted by
/// the budget still reports its best.
template <class Urbg>
RestartOutcome ceda2_restart(const bench::Problem& problem, const Ceda2Config& config, EvalBudget& budget,
                             Urbg& rng) {
  RestartOutcome out;
  const Sense sense = problem.sense;

  std::vector<Individual> sample;
  sample.reserve(config.init_count);
  for (std::size_t i = 0; i < config.init_count && !budget.exhausted(); ++i) {
    Individual ind;
    ind.genome = uniform_in(problem.bounds, rng);
    ind.eval_index = budget.consume();
    ind.fitness = problem(ind.genome);
    sample.push_back(std::move(ind));
  }
  if (sample.size() < config.init_count) return out;

  const SelectedSet selected = truncation_select(sample, config.selection_ratio, sense);

  dsts::ClusteringInput input;
  input.sense = sense;
  input.alpha = config.alpha;
  for (const auto& ind : selected.members) {
    input.points.push_back(ind.genome);
    input.fitness.push_back(ind.fitness);
  }
  const auto clustering = dsts::cluster(input);
  out.clusters = clustering.cluster_count();

  const Eda2Params params{config.cluster_population, config.selection_ratio, config.cluster_archive_length, sense};
  TerminationPolicy termination;
  termination.max_fes = std::numeric_limits<std::size_t>::max();
  termination.stagnation_enabled = true;
  termination.stagnation_window = config.stagnation_window;
  termination.stagnation_accuracy = config.accuracy;

  for (std::size_t k = 0; k < clustering.cluster_count(); ++k) {
    if (budget.exhausted()) break;
    std::vector<Individual> members;
    for (auto i : clustering.members(k)) members.push_back(selected.members[i]);
    auto result = run_eda2(problem.objective, problem.bounds, params, termination, std::move(members), budget, rng);
    if (result.best.evaluated()) out.cluster_bests.push_back(std::move(result.best));
  }
  return out;
}

using RestartObserver = std::function<void(const RestartRecord&)>;

/// Restarts until the problem's MaxFEs are spent.
template <class Urbg>
SolutionArchive run_ceda2(const bench::Problem& problem, const Ceda2Config& config, Urbg& rng,
                          const RestartObserver& on_restart = {}) {
  const Ceda2Config cfg = config.resolved(problem.dimension());
  cfg.validate();
  EvalBudget budget(problem.max_fes);
  SolutionArchive archive;
  for (std::size_t r = 0; !budget.exhausted(); ++r) {
    auto outcome = ceda2_restart(problem, cfg, budget, rng);
    for (auto& best : outcome.cluster_bests) archive.entries.push_back(std::move(best));
    if (on_restart) on_restart(RestartRecord{r, outcome.clusters, budget.used(), archive.size()});
  }
  return archive;
}

struct PeakReport {
  double accuracy_level = 0.0;
  std::vector<bool> found_mask;
  double peak_ratio = 0.0;

  std::size_t found() const {
    std::size_t n = 0;
    for (bool b : found_mask) n += b ? 1 : 0;
    return n;
  }
};

/// An entry detects optimum o when its fitness is within `epsilon` of the
/// optimum value, o is its nearest listed optimum, and it lies within the
/// niche radius of o. Each optimum counts once.
inline PeakReport peak_ratio(const SolutionArchive& archive, const bench::Problem& problem, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("peak_ratio: epsilon must be positive");
  const auto& optima = problem.global_optima;
  PeakReport report;
  report.accuracy_level = epsilon;
  report.found_mask.assign(optima.size(), false);
  for (const auto& entry : archive.entries) {
    if (!entry.evaluated() || !(std::abs(entry.fitness - problem.global_optimum_value) <= epsilon)) continue;
    std::size_t nearest = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < optima.size(); ++j) {
      const double d = (entry.genome - optima[j]).norm();
      if (d < best_d) {
        best_d = d;
        nearest = j;
      }
    }
    if (best_d <= problem.niche_radius) report.found_mask[nearest] = true;
  }
  report.peak_ratio = optima.empty() ? 0.0 : static_cast<double>(report.found()) / static_cast<double>(optima.size());
  return report;
}

inline constexpr double kFevZeroThreshold = 1e-8;

/// |f(best) - f(optimum)|, reported as 0 below 1e-8.
inline double fev(const Individual& best, const bench::Problem& problem) {
  if (!best.evaluated()) throw std::invalid_argument("fev: individual not evaluated");
  const double err = std::abs(best.fitness - problem.global_optimum_value);
  return err < kFevZeroThreshold ? 0.0 : err;
}

}  // namespace ceda
