#pragma once

/// Archive-based Gaussian EDA: truncation selection, archive-widened
/// covariance estimation, elitist resampling and pluggable termination.

#include "ceda/core.hpp"
#include "ceda/gaussian_model.hpp"

#include <algorithm>
#include <concepts>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda {

struct Eda2Params {
  std::size_t population_size = 80;
  double selection_ratio = 0.35;
  std::size_t archive_length = 10;
  Sense sense = Sense::minimize;

  void validate() const;
};

/// Number of individuals truncation keeps out of `count`.
///
/// The small slack absorbs representation error in products such as
/// 0.35 * 80 so that they floor to the intended integer.
inline std::size_t selection_count(double ratio, std::size_t count) {
  return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(count) + 1e-9));
}

inline void Eda2Params::validate() const {
  if (population_size < 2) throw std::invalid_argument("Eda2Params: population_size must be >= 2");
  if (!(selection_ratio > 0.0 && selection_ratio < 1.0)) {
    throw std::invalid_argument("Eda2Params: selection_ratio must lie in (0, 1)");
  }
  if (selection_count(selection_ratio, population_size) < 1) {
    throw std::invalid_argument("Eda2Params: selection_ratio * population_size must be >= 1");
  }
}

struct TerminationPolicy {
  std::size_t max_fes = 200000;
  std::size_t stagnation_window = 5;
  double stagnation_accuracy = 0.0;
  bool stagnation_enabled = false;
};

struct GenerationRecord {
  std::size_t generation = 0;
  std::size_t fes_used = 0;
  double best = 0.0;
  double median = 0.0;
  double mean = 0.0;
};

enum class StopReason { none, budget, stagnation, degenerate_model };

inline std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::budget: return "budget";
    case StopReason::stagnation: return "stagnation";
    case StopReason::degenerate_model: return "degenerate-model";
    case StopReason::none: break;
  }
  return "none";
}

struct Eda2Result {
  Individual best;
  std::size_t fes_used = 0;
  std::size_t generations = 0;
  std::vector<GenerationRecord> history;
  StopReason stop = StopReason::none;
};

/// Read-only snapshot handed to an observer once per generation, after the
/// model parameters are estimated and before the archive is updated.
struct GenerationView {
  std::size_t generation;
  std::span<const Individual> population;
  const SelectedSet& selected;
  const Archive& archive;
  const Vector& mean;
  const Matrix& covariance;
};

using GenerationObserver = std::function<void(const GenerationView&)>;

/// Keeps the best floor(ratio * |population|) individuals. Ties are broken
/// by lower eval_index.
inline SelectedSet truncation_select(std::span<const Individual> population, double ratio, Sense sense) {
  if (population.empty()) throw std::invalid_argument("truncation_select: empty population");
  const std::size_t k = selection_count(ratio, population.size());
  if (k == 0) throw std::invalid_argument("truncation_select: ratio selects no individuals");
  for (const auto& ind : population) {
    if (!ind.evaluated()) throw std::invalid_argument("truncation_select: unevaluated individual");
  }

  std::vector<std::size_t> idx(population.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const auto& x = population[a];
                      const auto& y = population[b];
                      if (x.fitness != y.fitness) return better(x.fitness, y.fitness, sense);
                      if (x.eval_index != y.eval_index) return x.eval_index < y.eval_index;
                      return a < b;
                    });

  SelectedSet out;
  out.members.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.members.push_back(population[idx[i]]);
  return out;
}

/// Redraws every out-of-box coordinate uniformly inside its bound.
template <class Urbg>
Vector bound_repair(Vector x, const Box& bounds, Urbg& rng) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= bounds.lower[i] && x[i] <= bounds.upper[i])) {
      std::uniform_real_distribution<double> u(bounds.lower[i], bounds.upper[i]);
      x[i] = u(rng);
    }
  }
  return x;
}

/// True iff the population median stayed inside a band narrower than
/// `accuracy` over the last `window` generations, i.e. the spread of the
/// last window + 1 medians is strictly below `accuracy`. A median that is
/// still moving in either direction keeps the run alive. Short histories
/// never stagnate.
inline bool stagnation_check(std::span<const double> medians, std::size_t window, double accuracy,
                             [[maybe_unused]] Sense sense) {
  if (window == 0 || medians.size() < window + 1) return false;
  const auto recent = medians.last(window + 1);
  const auto [lo, hi] = std::minmax_element(recent.begin(), recent.end());
  return *hi - *lo < accuracy;
}

namespace detail {

inline GenerationRecord summarize_generation(std::size_t generation, std::size_t fes,
                                             std::span<const Individual> population, double best) {
  std::vector<double> f;
  f.reserve(population.size());
  for (const auto& ind : population) f.push_back(ind.fitness);
  const double mean = std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
  return {generation, fes, best, median(std::move(f)), mean};
}

}  // namespace detail

/// Runs the archive-based EDA on `objective` inside `bounds`.
///
/// `init`, when given, seeds the first population; unevaluated members are
/// evaluated first. If its size differs from the population size, all of
/// its members form the first selected set. Every evaluation is charged to
/// `budget`, which may be shared with other runs; `termination.max_fes` caps
/// this run's own share.
template <class Objective, class Urbg>
  requires std::invocable<Objective&, const Vector&>
Eda2Result run_eda2(Objective&& objective, const Box& bounds, const Eda2Params& params,
                    const TerminationPolicy& termination, std::optional<std::vector<Individual>> init,
                    EvalBudget& budget, Urbg& rng, const GenerationObserver& observer = {}) {
  params.validate();
  if (termination.stagnation_window == 0) throw std::invalid_argument("run_eda2: stagnation_window must be >= 1");

  Eda2Result result;
  result.best.fitness = std::numeric_limits<double>::quiet_NaN();
  const Sense sense = params.sense;
  const std::size_t p = params.population_size;

  auto can_evaluate = [&] { return !budget.exhausted() && result.fes_used < termination.max_fes; };
  auto evaluate = [&](Individual& ind) {
    ind.eval_index = budget.consume();
    ++result.fes_used;
    ind.fitness = static_cast<double>(objective(ind.genome));
    if (!result.best.evaluated() || better(ind.fitness, result.best.fitness, sense)) result.best = ind;
  };

  if (!can_evaluate()) {
    result.stop = StopReason::budget;
    return result;
  }

  std::vector<Individual> population;
  const bool seeded = init.has_value() && !init->empty();
  if (seeded) {
    population = std::move(*init);
    for (auto& ind : population) {
      if (ind.genome.size() != bounds.dimension()) throw std::invalid_argument("run_eda2: init dimension mismatch");
      if (ind.evaluated()) {
        if (!result.best.evaluated() || better(ind.fitness, result.best.fitness, sense)) result.best = ind;
      }
    }
  } else {
    population.resize(p);
    for (auto& ind : population) ind.genome = uniform_in(bounds, rng);
  }
  const bool whole_first_selection = seeded && population.size() != p;

  for (auto& ind : population) {
    if (ind.evaluated()) continue;
    if (!can_evaluate()) break;
    evaluate(ind);
  }
  std::erase_if(population, [](const Individual& ind) { return !ind.evaluated(); });
  if (population.empty()) {
    result.stop = StopReason::budget;
    return result;
  }

  Archive archive(params.archive_length);
  std::vector<double> medians;

  for (std::size_t t = 0;; ++t) {
    result.history.push_back(detail::summarize_generation(t, result.fes_used, population, result.best.fitness));
    result.generations = t + 1;
    medians.push_back(result.history.back().median);

    if (termination.stagnation_enabled &&
        stagnation_check(medians, termination.stagnation_window, termination.stagnation_accuracy, sense)) {
      result.stop = StopReason::stagnation;
      break;
    }
    if (!can_evaluate()) {
      result.stop = StopReason::budget;
      break;
    }

    SelectedSet selected;
    if (t == 0 && whole_first_selection) {
      selected.members = population;
    } else {
      selected = truncation_select(population, params.selection_ratio, sense);
    }
    selected.generation = t;

    const Vector mean = estimate_mean(selected);
    const Matrix covariance = estimate_covariance_with_archive(selected, archive, mean);
    if (observer) observer(GenerationView{t, population, selected, archive, mean, covariance});
    archive.push(std::move(selected));

    GaussianModel model;
    try {
      model = build_model(mean, covariance);
    } catch (const DegenerateModelError&) {
      result.stop = StopReason::degenerate_model;
      break;
    }

    const Individual elite = result.best;
    auto offspring = sample(model, p - 1, rng);
    std::vector<Individual> next;
    next.reserve(p);
    for (auto& x : offspring) {
      if (!can_evaluate()) break;
      Individual ind;
      ind.genome = bound_repair(std::move(x), bounds, rng);
      evaluate(ind);
      next.push_back(std::move(ind));
    }
    next.push_back(elite);
    population = std::move(next);
  }
  return result;
}

}  // namespace ceda
