#pragma once

/// Shifted and rotated unimodal/valley problems for parameter studies
/// of the single-population optimizer (minimization, optimum value 0).

#include "ceda/benchmarks/basic_functions.hpp"
#include "ceda/benchmarks/problem.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace ceda::bench {

enum class StudyFunction { elliptic, rosenbrock, sphere };

inline std::string to_string(StudyFunction f) {
  switch (f) {
    case StudyFunction::elliptic: return "elliptic";
    case StudyFunction::rosenbrock: return "rosenbrock";
    case StudyFunction::sphere: return "sphere";
  }
  return "unknown";
}

inline constexpr std::uint64_t kStudySeed = 2005;
inline constexpr double kStudyBound = 100.0;
inline constexpr double kStudyShiftBound = 80.0;
inline constexpr std::size_t kStudyMaxFes = 200000;

/// Study problem with an explicit optimum location and rotation.
///
/// Elliptic and sphere are evaluated at z = R (x - o). Rosenbrock is
/// evaluated at z = R (x - o) + 1, so its optimum also sits at o; with
/// o = (1, ..., 1) and R = I it is the classic function.
inline Problem make_study_problem(StudyFunction which, const Vector& optimum, const Matrix& rotation,
                                  std::size_t max_fes = kStudyMaxFes) {
  const Eigen::Index dim = optimum.size();
  if (dim < 1 || rotation.rows() != dim || rotation.cols() != dim) {
    throw std::invalid_argument("make_study_problem: rotation must be dim x dim");
  }
  if (!is_orthogonal(rotation)) throw std::invalid_argument("make_study_problem: rotation not orthogonal");

  auto o = std::make_shared<const Vector>(optimum);
  auto r = std::make_shared<const Matrix>(rotation);
  Problem p;
  p.name = "study/" + to_string(which) + "-d" + std::to_string(dim);
  p.bounds = Box::uniform(dim, -kStudyBound, kStudyBound);
  p.sense = Sense::minimize;
  p.global_optimum_value = 0.0;
  p.global_optima = {optimum};
  p.max_fes = max_fes;
  switch (which) {
    case StudyFunction::elliptic:
      p.objective = [o, r](const Vector& x) { return elliptic(*r * (x - *o)); };
      break;
    case StudyFunction::rosenbrock:
      p.objective = [o, r](const Vector& x) {
        return rosenbrock((*r * (x - *o)).array() + 1.0);
      };
      break;
    case StudyFunction::sphere:
      p.objective = [o, r](const Vector& x) { return sphere(*r * (x - *o)); };
      break;
  }
  return finalize(std::move(p));
}

/// Seeded shifted-rotated study problem: the optimum is drawn uniformly from
/// [-80, 80]^dim and the rotation from a seeded QR factorization.
inline Problem make_cec2005_study_problem(StudyFunction which, Eigen::Index dimension,
                                          std::uint64_t seed = kStudySeed) {
  if (dimension < 2) throw std::invalid_argument("make_cec2005_study_problem: dimension must be >= 2");
  Rng rng(seed);
  const Vector shift = uniform_in(Box::uniform(dimension, -kStudyShiftBound, kStudyShiftBound), rng);
  const Matrix rotation = random_rotation(dimension, rng);
  return make_study_problem(which, shift, rotation);
}

}  // namespace ceda::bench
