#pragma once

/// Benchmark problem definition and budget-counted evaluation.

#include "ceda/core.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda::bench {

using ObjectiveFn = std::function<double(const Vector&)>;

/// An immutable test problem with its known global optima.
struct Problem {
  std::string name;
  Box bounds;
  Sense sense = Sense::maximize;
  double global_optimum_value = 0.0;
  std::vector<Vector> global_optima;
  double niche_radius = 0.0;
  std::size_t max_fes = 0;
  ObjectiveFn objective;

  Eigen::Index dimension() const { return bounds.dimension(); }

  /// Raw evaluation without budget accounting.
  double operator()(const Vector& x) const { return objective(x); }
};

/// Evaluates `x` and charges one evaluation to `budget`.
/// Throws BudgetExhausted when nothing is left.
inline double evaluate(const Problem& problem, const Vector& x, EvalBudget& budget) {
  budget.consume();
  return problem.objective(x);
}

/// Half the smallest pairwise distance between optima; half the box
/// diagonal when there is a single optimum.
inline double default_niche_radius(const std::vector<Vector>& optima, const Box& bounds) {
  if (optima.size() < 2) return 0.5 * bounds.diagonal();
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < optima.size(); ++i) {
    for (std::size_t j = i + 1; j < optima.size(); ++j) dmin = std::min(dmin, (optima[i] - optima[j]).norm());
  }
  return 0.5 * dmin;
}

inline constexpr double kOptimumSelfCheckTolerance = 1e-6;

/// Fills in a default niche radius and verifies that every listed optimum
/// lies in the box and reaches the optimum value.
inline Problem finalize(Problem problem) {
  if (!problem.objective) throw std::invalid_argument(problem.name + ": missing objective");
  if (problem.global_optima.empty()) throw std::invalid_argument(problem.name + ": no global optima listed");
  if (problem.max_fes == 0) throw std::invalid_argument(problem.name + ": max_fes must be positive");
  for (const auto& o : problem.global_optima) {
    if (!problem.bounds.contains(o)) throw std::logic_error(problem.name + ": listed optimum outside bounds");
    const double f = problem.objective(o);
    if (!(std::abs(f - problem.global_optimum_value) <= kOptimumSelfCheckTolerance)) {
      throw std::logic_error(problem.name + ": listed optimum fails the value self-check");
    }
  }
  if (!(problem.niche_radius > 0.0)) problem.niche_radius = default_niche_radius(problem.global_optima, problem.bounds);
  return problem;
}

/// Random orthogonal matrix: QR of a Gaussian matrix with the sign of R's
/// diagonal folded into Q.
template <class Urbg>
Matrix random_rotation(Eigen::Index dim, Urbg& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

inline constexpr double kOrthogonalityTolerance = 1e-10;

inline bool is_orthogonal(const Matrix& m, double tol = kOrthogonalityTolerance) {
  if (m.rows() != m.cols()) return false;
  const Matrix gram = m.transpose() * m;
  return (gram - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace ceda::bench
