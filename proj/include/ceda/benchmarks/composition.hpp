#pragma once

/// Weighted blends of shifted, rotated, scaled basic functions.
///
/// F(x) = -sum_i w_i(x) * (C * f_i(z_i) / fmax_i + bias_i), with
/// z_i = R_i (x - o_i) / lambda_i. The weights are Gaussian in the distance
/// to each shift point o_i; all but the dominant weight are damped by
/// (1 - w_max^10), so F(o_i) = -bias_i exactly. Components with the
/// smallest bias are the global optima (a maximization problem).

#include "ceda/benchmarks/basic_functions.hpp"
#include "ceda/benchmarks/problem.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda::bench {

enum class BasicFunction { sphere, griewank, rastrigin, weierstrass, ef8f2 };

inline double evaluate_basic(BasicFunction f, const Vector& z) {
  switch (f) {
    case BasicFunction::sphere: return sphere(z);
    case BasicFunction::griewank: return griewank(z);
    case BasicFunction::rastrigin: return rastrigin(z);
    case BasicFunction::weierstrass: return weierstrass(z);
    case BasicFunction::ef8f2: return ef8f2(z);
  }
  throw std::invalid_argument("unknown basic function");
}

struct CompositionComponent {
  BasicFunction function = BasicFunction::sphere;
  double sigma = 1.0;
  double lambda = 1.0;
  double bias = 0.0;
};

struct CompositionSpec {
  std::string name = "composition";
  Box bounds;
  std::vector<CompositionComponent> components;
  std::vector<Vector> shifts;
  std::vector<Matrix> rotations;
  std::size_t max_fes = 200000;
  double scale = 2000.0;
};

namespace detail {

struct CompositionData {
  std::vector<CompositionComponent> components;
  std::vector<Vector> shifts;
  std::vector<Matrix> rotations;
  std::vector<double> fmax;
  double scale = 2000.0;

  Vector transform(std::size_t i, const Vector& x) const {
    return rotations[i] * ((x - shifts[i]) / components[i].lambda);
  }

  double operator()(const Vector& x) const {
    const std::size_t k = components.size();
    const auto dim = static_cast<double>(x.size());
    std::vector<double> w(k);
    std::size_t dominant = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const double s = components[i].sigma;
      w[i] = std::exp(-(x - shifts[i]).squaredNorm() / (2.0 * dim * s * s));
      if (w[i] > w[dominant]) dominant = i;
    }
    const double damp = 1.0 - std::pow(w[dominant], 10.0);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != dominant) w[i] *= damp;
      total += w[i];
    }
    double result = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double wi = total == 0.0 ? 1.0 / static_cast<double>(k) : w[i] / total;
      if (wi == 0.0) continue;
      const double fi = evaluate_basic(components[i].function, transform(i, x));
      result += wi * (scale * fi / fmax[i] + components[i].bias);
    }
    return -result;
  }
};

}  // namespace detail

/// Builds the composition problem described by `spec`. Global optima are
/// the shift points whose component has the smallest bias.
inline Problem make_composition(const CompositionSpec& spec) {
  const std::size_t k = spec.components.size();
  const Eigen::Index dim = spec.bounds.dimension();
  if (k == 0) throw std::invalid_argument("make_composition: no components");
  if (spec.shifts.size() != k || spec.rotations.size() != k) {
    throw std::invalid_argument("make_composition: need one shift and one rotation per component");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (spec.shifts[i].size() != dim || spec.rotations[i].rows() != dim) {
      throw std::invalid_argument("make_composition: component dimension mismatch");
    }
    if (!is_orthogonal(spec.rotations[i])) throw std::invalid_argument("make_composition: rotation not orthogonal");
    if (!(spec.components[i].lambda > 0.0 && spec.components[i].sigma > 0.0)) {
      throw std::invalid_argument("make_composition: sigma and lambda must be positive");
    }
  }

  auto data = std::make_shared<detail::CompositionData>();
  data->components = spec.components;
  data->shifts = spec.shifts;
  data->rotations = spec.rotations;
  data->scale = spec.scale;
  for (std::size_t i = 0; i < k; ++i) {
    const Vector z = spec.rotations[i] * (spec.bounds.upper / spec.components[i].lambda);
    const double fm = std::abs(evaluate_basic(spec.components[i].function, z));
    if (!(fm > 0.0)) throw std::invalid_argument("make_composition: degenerate normalization");
    data->fmax.push_back(fm);
  }

  double min_bias = spec.components.front().bias;
  for (const auto& c : spec.components) min_bias = std::min(min_bias, c.bias);

  Problem p;
  p.name = spec.name;
  p.bounds = spec.bounds;
  p.sense = Sense::maximize;
  p.global_optimum_value = -min_bias + 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (spec.components[i].bias == min_bias) p.global_optima.push_back(spec.shifts[i]);
  }
  p.max_fes = spec.max_fes;
  p.objective = [data](const Vector& x) { return (*data)(x); };
  return finalize(std::move(p));
}

/// Shift points drawn uniformly from the box shrunk by 20% per side, kept at
/// least `min_separation` apart by rejection.
template <class Urbg>
std::vector<Vector> seeded_shifts(std::size_t count, const Box& bounds, double min_separation, Urbg& rng) {
  const Vector margin = 0.2 * (bounds.upper - bounds.lower) / 2.0;
  const Box inner(bounds.lower + margin, bounds.upper - margin);
  std::vector<Vector> out;
  while (out.size() < count) {
    Vector c = uniform_in(inner, rng);
    bool ok = true;
    for (const auto& o : out) ok = ok && (o - c).norm() >= min_separation;
    if (ok) out.push_back(std::move(c));
  }
  return out;
}

/// Fills shifts and rotations for `components` deterministically from `seed`.
inline CompositionSpec seeded_composition(std::string name, std::vector<CompositionComponent> components,
                                          const Box& bounds, bool rotated, std::uint64_t seed,
                                          std::size_t max_fes) {
  Rng rng(seed);
  CompositionSpec spec;
  spec.name = std::move(name);
  spec.bounds = bounds;
  spec.components = std::move(components);
  spec.max_fes = max_fes;
  spec.shifts = seeded_shifts(spec.components.size(), bounds, 1.0, rng);
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    spec.rotations.push_back(rotated ? random_rotation(bounds.dimension(), rng)
                                     : Matrix::Identity(bounds.dimension(), bounds.dimension()));
  }
  return spec;
}

}  // namespace ceda::bench
