#pragma once

/// Decision-space / target-space clustering.
///
/// Centers are solutions that are both good and far from any better
/// solution. Every other solution joins the cluster of its nearest better
/// neighbour, so clusters follow chains of improvement toward their center.
///
/// "Better" is a strict total order: fitness under the sense, with exact
/// ties ranked by original index (lower index ranks worse).

#include "ceda/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ceda::dsts {

struct ClusteringInput {
  std::vector<Vector> points;
  std::vector<double> fitness;
  Sense sense = Sense::maximize;
  double alpha = 0.8;

  std::size_t size() const { return points.size(); }
  void validate() const;
};

struct ClusteringResult {
  /// Center indices, best center first. Cluster id k belongs to centers[k].
  std::vector<std::size_t> centers;
  /// Cluster id per point.
  std::vector<std::size_t> labels;
  std::vector<double> deltas;
  double threshold = 0.0;

  std::size_t cluster_count() const { return centers.size(); }

  /// Point indices of cluster `id`, in input order.
  std::vector<std::size_t> members(std::size_t id) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == id) out.push_back(i);
    }
    return out;
  }
};

inline void ClusteringInput::validate() const {
  if (points.empty()) throw std::invalid_argument("dsts: no points");
  if (fitness.size() != points.size()) throw std::invalid_argument("dsts: fitness/points length mismatch");
  const auto dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("dsts: mixed dimensions");
  }
  for (double f : fitness) {
    if (!std::isfinite(f)) throw std::invalid_argument("dsts: non-finite fitness");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("dsts: alpha must lie in (0, 1)");
}

/// Permutation listing indices from worst to best.
inline std::vector<std::size_t> strict_fitness_order(std::span<const double> fitness, Sense sense) {
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return better(fitness[b], fitness[a], sense); });
  return order;
}

namespace detail {

inline std::vector<std::size_t> ranks_of(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

}  // namespace detail

/// Distance from each solution to its nearest better solution; the best
/// solution gets the largest of the others' values (1 when it is alone).
inline std::vector<double> relative_distances(const ClusteringInput& input, const std::vector<std::size_t>& order) {
  const std::size_t m = input.size();
  std::vector<double> delta(m, 0.0);
  if (m == 1) {
    delta[0] = 1.0;
    return delta;
  }
  double largest = 0.0;
  for (std::size_t r = 0; r + 1 < m; ++r) {
    const auto i = order[r];
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t s = r + 1; s < m; ++s) {
      d = std::min(d, (input.points[i] - input.points[order[s]]).norm());
    }
    delta[i] = d;
    largest = std::max(largest, d);
  }
  delta[order.back()] = largest;
  return delta;
}

struct CenterSelection {
  double threshold = 0.0;
  std::vector<std::size_t> centers;  // ascending index order
};

/// threshold = alpha * (max - min); centers are all deltas strictly above it.
///
/// When every delta is zero no index clears the threshold; `fallback` (the
/// best solution, when the caller knows it) then becomes the lone center.
inline CenterSelection threshold_and_centers(std::span<const double> deltas, double alpha,
                                             std::optional<std::size_t> fallback = std::nullopt) {
  if (deltas.empty()) throw std::invalid_argument("threshold_and_centers: no deltas");
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());
  CenterSelection out;
  out.threshold = (*hi == *lo) ? 0.0 : alpha * (*hi - *lo);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] > out.threshold) out.centers.push_back(i);
  }
  if (out.centers.empty() && fallback) out.centers.push_back(*fallback);
  return out;
}

/// Labels every solution with the cluster id of its nearest better
/// neighbour, walking from best to worst. Centers keep their position in
/// `centers` as their cluster id. Distance ties go to the better neighbour.
inline std::vector<std::size_t> assign_members(const ClusteringInput& input, const std::vector<std::size_t>& order,
                                               const std::vector<std::size_t>& centers) {
  const std::size_t m = input.size();
  if (centers.empty()) throw std::invalid_argument("assign_members: no centers");
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> labels(m, unset);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    if (centers[k] >= m) throw std::invalid_argument("assign_members: center index out of range");
    labels[centers[k]] = k;
  }
  if (labels[order.back()] == unset) throw std::invalid_argument("assign_members: best solution must be a center");

  for (std::size_t r = m - 1; r-- > 0;) {
    const auto i = order[r];
    if (labels[i] != unset) continue;
    std::size_t nearest = order[r + 1];
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t s = m; s-- > r + 1;) {  // better neighbours first so ties keep them
      const double d = (input.points[i] - input.points[order[s]]).norm();
      if (d < best_d) {
        best_d = d;
        nearest = order[s];
      }
    }
    labels[i] = labels[nearest];
  }
  return labels;
}

/// Full pipeline: order, relative distances, threshold and centers, labels.
inline ClusteringResult cluster(const ClusteringInput& input) {
  input.validate();
  const auto order = strict_fitness_order(input.fitness, input.sense);
  ClusteringResult out;
  out.deltas = relative_distances(input, order);
  auto selection = threshold_and_centers(out.deltas, input.alpha, order.back());
  out.threshold = selection.threshold;

  const auto rank = detail::ranks_of(order);
  out.centers = std::move(selection.centers);
  std::sort(out.centers.begin(), out.centers.end(), [&](std::size_t a, std::size_t b) { return rank[a] > rank[b]; });
  out.labels = assign_members(input, order, out.centers);
  return out;
}

}  // namespace ceda::dsts
