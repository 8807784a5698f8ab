#pragma once

/// Brute-force global-optimum finder: evaluate a regular grid, refine
/// every discrete local maximum by compass search, keep the refined points
/// that tie with the best one.

#include "ceda/benchmarks/problem.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace ceda::oracle {

struct GridOptions {
  std::size_t points_per_dim = 200;
  /// Refined points within this fitness gap of the best are optima.
  double tie_tolerance = 1e-4;
  /// Refined points closer than this are the same optimum.
  double merge_distance = 1e-3;
  double final_step = 1e-11;
};

/// Maximizes `f` from `x` by compass search with step halving, staying
/// inside the box.
inline Vector compass_refine(const std::function<double(const Vector&)>& f, Vector x, const Box& box, double step,
                             double final_step) {
  double fx = f(x);
  while (step > final_step) {
    bool moved = false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      for (double dir : {1.0, -1.0}) {
        Vector y = x;
        y[i] = std::clamp(y[i] + dir * step, box.lower[i], box.upper[i]);
        const double fy = f(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return x;
}

/// Global maximizers of `f` over `box` (maximization sense).
inline std::vector<Vector> grid_optima(const std::function<double(const Vector&)>& f, const Box& box,
                                       const GridOptions& opt = {}) {
  const auto dim = static_cast<std::size_t>(box.dimension());
  const std::size_t n = opt.points_per_dim;
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= n;

  auto coord = [&](std::size_t d, std::size_t k) {
    return box.lower[static_cast<Eigen::Index>(d)] +
           (box.upper[static_cast<Eigen::Index>(d)] - box.lower[static_cast<Eigen::Index>(d)]) *
               static_cast<double>(k) / static_cast<double>(n - 1);
  };
  auto unflatten = [&](std::size_t flat, std::vector<std::size_t>& idx) {
    for (std::size_t d = 0; d < dim; ++d) {
      idx[d] = flat % n;
      flat /= n;
    }
  };
  auto point = [&](const std::vector<std::size_t>& idx) {
    Vector x(static_cast<Eigen::Index>(dim));
    for (std::size_t d = 0; d < dim; ++d) x[static_cast<Eigen::Index>(d)] = coord(d, idx[d]);
    return x;
  };

  std::vector<double> values(total);
  std::vector<std::size_t> idx(dim);
  for (std::size_t i = 0; i < total; ++i) {
    unflatten(i, idx);
    values[i] = f(point(idx));
  }

  std::size_t neighbours = 1;
  for (std::size_t d = 0; d < dim; ++d) neighbours *= 3;
  std::vector<Vector> refined;
  std::vector<double> refined_values;
  const double step = (box.upper - box.lower).maxCoeff() / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < total; ++i) {
    unflatten(i, idx);
    bool is_max = true;
    for (std::size_t m = 0; m < neighbours && is_max; ++m) {
      std::size_t code = m, flat = 0, stride = 1;
      bool self = true, inside = true;
      for (std::size_t d = 0; d < dim; ++d) {
        const long off = static_cast<long>(code % 3) - 1;
        code /= 3;
        self = self && off == 0;
        const long k = static_cast<long>(idx[d]) + off;
        if (k < 0 || k >= static_cast<long>(n)) inside = false;
        flat += static_cast<std::size_t>(std::max(k, 0L)) * stride;
        stride *= n;
      }
      if (self || !inside) continue;
      if (values[flat] > values[i]) is_max = false;
    }
    if (!is_max) continue;
    Vector x = compass_refine(f, point(idx), box, step, opt.final_step);
    refined_values.push_back(f(x));
    refined.push_back(std::move(x));
  }

  const double best = *std::max_element(refined_values.begin(), refined_values.end());
  std::vector<Vector> optima;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (refined_values[i] < best - opt.tie_tolerance) continue;
    const bool dup = std::any_of(optima.begin(), optima.end(),
                                 [&](const Vector& o) { return (o - refined[i]).norm() < opt.merge_distance; });
    if (!dup) optima.push_back(refined[i]);
  }
  std::sort(optima.begin(), optima.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return optima;
}

}  // namespace ceda::oracle
