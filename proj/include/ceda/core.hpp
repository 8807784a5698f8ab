#pragma once

/// Shared vocabulary: vectors, boxes, individuals, optimization sense
/// and the function-evaluation budget.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Default random engine. Every run owns exactly one.
using Rng = std::mt19937_64;

enum class Sense { maximize, minimize };

/// True when fitness `a` is strictly better than `b` under `sense`.
inline bool better(double a, double b, Sense sense) {
  return sense == Sense::maximize ? a > b : a < b;
}

/// Signed improvement of `to` over `from`, positive when `to` is better.
inline double improvement(double from, double to, Sense sense) {
  return sense == Sense::maximize ? to - from : from - to;
}

/// The worst representable fitness under `sense`.
inline double worst_fitness(Sense sense) {
  return sense == Sense::maximize ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
}

inline std::string to_string(Sense sense) {
  return sense == Sense::maximize ? "maximize" : "minimize";
}

/// Axis-aligned search box.
struct Box {
  Vector lower;
  Vector upper;

  Box() = default;
  Box(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size() || lower.size() == 0) {
      throw std::invalid_argument("Box: bound vectors must be non-empty and of equal length");
    }
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
      if (!(lower[i] < upper[i])) throw std::invalid_argument("Box: lower must be < upper");
    }
  }

  static Box uniform(Eigen::Index dim, double lo, double hi) {
    return Box(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
  }

  Eigen::Index dimension() const { return lower.size(); }

  bool contains(const Vector& x) const {
    if (x.size() != dimension()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
    }
    return true;
  }

  double diagonal() const { return (upper - lower).norm(); }
};

/// Draws a point uniformly at random inside `box`.
template <class Urbg>
Vector uniform_in(const Box& box, Urbg& rng) {
  Vector x(box.dimension());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    std::uniform_real_distribution<double> u(box.lower[i], box.upper[i]);
    x[i] = u(rng);
  }
  return x;
}

/// A candidate solution with its cached objective value.
///
/// `fitness` is NaN until the individual has been evaluated. `eval_index` is
/// the value of the evaluation counter right after this individual was
/// evaluated (1-based), so it doubles as an age for tie-breaking.
struct Individual {
  Vector genome;
  double fitness = std::numeric_limits<double>::quiet_NaN();
  std::size_t eval_index = 0;

  bool evaluated() const { return !std::isnan(fitness); }

  friend bool operator==(const Individual& a, const Individual& b) {
    if (a.eval_index != b.eval_index || a.genome.size() != b.genome.size()) return false;
    if (a.evaluated() != b.evaluated()) return false;
    if (a.evaluated() && a.fitness != b.fitness) return false;
    return a.genome == b.genome;
  }
};

/// Raised when an evaluation is requested after the budget is spent.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

/// Counter of objective evaluations with a hard ceiling.
class EvalBudget {
 public:
  explicit EvalBudget(std::size_t max_fes) : max_fes_(max_fes) {
    if (max_fes == 0) throw std::invalid_argument("EvalBudget: max_fes must be positive");
  }

  std::size_t max_fes() const { return max_fes_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return max_fes_ - used_; }
  bool exhausted() const { return used_ >= max_fes_; }

  /// Charges one evaluation. Returns the new counter value.
  std::size_t consume() {
    if (exhausted()) throw BudgetExhausted();
    return ++used_;
  }

 private:
  std::size_t max_fes_;
  std::size_t used_ = 0;
};

/// Median of a list of values (mean of the two middle values for even sizes).
inline double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty list");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace ceda
