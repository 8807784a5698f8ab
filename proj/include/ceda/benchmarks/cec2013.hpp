#pragma once

/// The twenty CEC'2013 niching problems.
///
/// f1-f10 use their closed forms; their optima are derived analytically
/// (Vincent, modified Rastrigin), by Newton refinement of known
/// approximations (Himmelblau, six-hump camel back) or by 1-D refinement of
/// the separable factor (Shubert). f11-f20 are composition problems whose
/// shift points and rotations come from a fixed seed per function
/// (kCompositionSeedBase + id), not from the original data files.

#include "ceda/benchmarks/composition.hpp"
#include "ceda/benchmarks/problem.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda::bench {

inline constexpr std::uint64_t kCompositionSeedBase = 2013;

// --- closed forms (maximization) -------------------------------------------

inline double five_uneven_peak_trap(const Vector& v) {
  const double x = v[0];
  if (x < 0.0) return 0.0;
  if (x < 2.5) return 80.0 * (2.5 - x);
  if (x < 5.0) return 64.0 * (x - 2.5);
  if (x < 7.5) return 64.0 * (7.5 - x);
  if (x < 12.5) return 28.0 * (x - 7.5);
  if (x < 17.5) return 28.0 * (17.5 - x);
  if (x < 22.5) return 32.0 * (x - 17.5);
  if (x < 27.5) return 32.0 * (27.5 - x);
  if (x <= 30.0) return 80.0 * (x - 27.5);
  return 0.0;
}

inline double equal_maxima(const Vector& v) { return std::pow(std::sin(5.0 * std::numbers::pi * v[0]), 6); }

inline double uneven_decreasing_maxima(const Vector& v) {
  const double x = v[0];
  const double envelope = std::exp(-2.0 * std::log(2.0) * std::pow((x - 0.08) / 0.854, 2));
  return envelope * std::pow(std::sin(5.0 * std::numbers::pi * (std::pow(x, 0.75) - 0.05)), 6);
}

inline double himmelblau(const Vector& v) {
  const double a = v[0] * v[0] + v[1] - 11.0;
  const double b = v[0] + v[1] * v[1] - 7.0;
  return 200.0 - a * a - b * b;
}

inline double six_hump_camel_back(const Vector& v) {
  const double x = v[0];
  const double y = v[1];
  const double x2 = x * x;
  return -((4.0 - 2.1 * x2 + x2 * x2 / 3.0) * x2 + x * y + (4.0 * y * y - 4.0) * y * y);
}

/// One factor of the separable Shubert product.
inline double shubert_factor(double x) {
  double s = 0.0;
  for (int j = 1; j <= 5; ++j) s += j * std::cos((j + 1) * x + j);
  return s;
}

inline double shubert(const Vector& v) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) prod *= shubert_factor(v[i]);
  return -prod;
}

inline double vincent(const Vector& v) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::sin(10.0 * std::log(v[i]));
  return s / static_cast<double>(v.size());
}

/// Modified Rastrigin with frequencies (3, 4) on [0, 1]^2.
inline double modified_rastrigin(const Vector& v) {
  constexpr std::array<double, 2> k{3.0, 4.0};
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    s += 10.0 + 9.0 * std::cos(2.0 * std::numbers::pi * k[static_cast<std::size_t>(i)] * v[i]);
  }
  return -s;
}

// --- optimum derivation helpers ---------------------------------------------

namespace detail {

/// Newton iteration on a 2-D gradient field.
template <class Grad, class Hess>
Vector newton_stationary(Vector x, Grad grad, Hess hess, int iterations = 50) {
  for (int it = 0; it < iterations; ++it) {
    const Vector g = grad(x);
    const Matrix h = hess(x);
    const Vector step = h.fullPivLu().solve(g);
    x -= step;
    if (step.norm() < 1e-15) break;
  }
  return x;
}

/// Golden-section maximization on [a, b].
template <class F>
double golden_max(F f, double a, double b, int iterations = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  for (int i = 0; i < iterations && (b - a) > 1e-15; ++i) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

/// Extrema of the Shubert factor on [lo, hi]: value and arguments of the
/// global maximum and global minimum, found by grid bracketing and Newton
/// refinement of the derivative.
struct FactorExtrema {
  double max_value = 0.0;
  double min_value = 0.0;
  std::vector<double> argmax;
  std::vector<double> argmin;
};

inline FactorExtrema shubert_factor_extrema(double lo, double hi) {
  auto d1 = [](double x) {
    double s = 0.0;
    for (int j = 1; j <= 5; ++j) s -= j * (j + 1) * std::sin((j + 1) * x + j);
    return s;
  };
  auto d2 = [](double x) {
    double s = 0.0;
    for (int j = 1; j <= 5; ++j) s -= j * (j + 1) * (j + 1) * std::cos((j + 1) * x + j);
    return s;
  };
  std::vector<double> stationary;
  constexpr int steps = 20000;
  const double h = (hi - lo) / steps;
  for (int i = 0; i < steps; ++i) {
    const double a = lo + i * h;
    const double b = a + h;
    if (d1(a) * d1(b) > 0.0) continue;
    double x = 0.5 * (a + b);
    for (int it = 0; it < 50; ++it) {
      const double step = d1(x) / d2(x);
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (x >= lo && x <= hi) stationary.push_back(x);
  }
  FactorExtrema out;
  out.max_value = -std::numeric_limits<double>::infinity();
  out.min_value = std::numeric_limits<double>::infinity();
  for (double x : stationary) {
    out.max_value = std::max(out.max_value, shubert_factor(x));
    out.min_value = std::min(out.min_value, shubert_factor(x));
  }
  auto push_unique = [](std::vector<double>& v, double x) {
    for (double y : v) {
      if (std::abs(x - y) < 1e-8) return;
    }
    v.push_back(x);
  };
  for (double x : stationary) {
    if (shubert_factor(x) > out.max_value - 1e-9) push_unique(out.argmax, x);
    if (shubert_factor(x) < out.min_value + 1e-9) push_unique(out.argmin, x);
  }
  std::sort(out.argmax.begin(), out.argmax.end());
  std::sort(out.argmin.begin(), out.argmin.end());
  return out;
}

/// Global maximizers of -prod g(x_i): exactly one coordinate at an argmin
/// of g, the rest at argmaxes (dim 2 or 3).
inline std::vector<Vector> shubert_optima(Eigen::Index dim, const FactorExtrema& e) {
  std::vector<Vector> out;
  const std::size_t nmax = e.argmax.size();
  const std::size_t nmin = e.argmin.size();
  for (Eigen::Index neg = 0; neg < dim; ++neg) {
    std::size_t combos = nmin;
    for (Eigen::Index i = 1; i < dim; ++i) combos *= nmax;
    for (std::size_t c = 0; c < combos; ++c) {
      Vector x(dim);
      std::size_t code = c;
      x[neg] = e.argmin[code % nmin];
      code /= nmin;
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (i == neg) continue;
        x[i] = e.argmax[code % nmax];
        code /= nmax;
      }
      out.push_back(x);
    }
  }
  return out;
}

/// Points with sin(10 log x_i) = 1 in every coordinate inside [lo, hi]^dim.
inline std::vector<Vector> vincent_optima(Eigen::Index dim, double lo, double hi) {
  std::vector<double> roots;
  for (int k = -10; k <= 10; ++k) {
    const double x = std::exp((std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * k) / 10.0);
    if (x >= lo && x <= hi) roots.push_back(x);
  }
  std::vector<Vector> out;
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < dim; ++i) total *= roots.size();
  for (std::size_t c = 0; c < total; ++c) {
    Vector x(dim);
    std::size_t code = c;
    for (Eigen::Index i = 0; i < dim; ++i) {
      x[i] = roots[code % roots.size()];
      code /= roots.size();
    }
    out.push_back(x);
  }
  return out;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Vector himmelblau_refine(const Vector& x0) {
  auto grad = [](const Vector& v) {
    const double a = v[0] * v[0] + v[1] - 11.0;
    const double b = v[0] + v[1] * v[1] - 7.0;
    return vec({4.0 * v[0] * a + 2.0 * b, 2.0 * a + 4.0 * v[1] * b});
  };
  auto hess = [](const Vector& v) {
    const double a = v[0] * v[0] + v[1] - 11.0;
    const double b = v[0] + v[1] * v[1] - 7.0;
    Matrix h(2, 2);
    h << 4.0 * a + 8.0 * v[0] * v[0] + 2.0, 4.0 * v[0] + 4.0 * v[1], 4.0 * v[0] + 4.0 * v[1],
        2.0 + 4.0 * b + 8.0 * v[1] * v[1];
    return h;
  };
  return newton_stationary(x0, grad, hess);
}

inline Vector camel_refine(const Vector& x0) {
  auto grad = [](const Vector& v) {
    const double x = v[0];
    const double y = v[1];
    return vec({8.0 * x - 8.4 * x * x * x + 2.0 * std::pow(x, 5) + y, x - 8.0 * y + 16.0 * y * y * y});
  };
  auto hess = [](const Vector& v) {
    Matrix h(2, 2);
    h << 8.0 - 25.2 * v[0] * v[0] + 10.0 * std::pow(v[0], 4), 1.0, 1.0, -8.0 + 48.0 * v[1] * v[1];
    return h;
  };
  return newton_stationary(x0, grad, hess);
}

inline Problem closed_form(std::string name, Box bounds, double optimum_value, std::vector<Vector> optima,
                           std::size_t max_fes, ObjectiveFn f) {
  Problem p;
  p.name = std::move(name);
  p.bounds = std::move(bounds);
  p.sense = Sense::maximize;
  p.global_optimum_value = optimum_value;
  p.global_optima = std::move(optima);
  p.max_fes = max_fes;
  p.objective = std::move(f);
  return finalize(std::move(p));
}

}  // namespace detail

/// Global and local maxima of the six-hump camel back (four basins that
/// survive truncation; the two poor maxima near (+-1.6, +-0.57) excluded).
inline std::vector<Vector> six_hump_basin_optima() {
  using detail::camel_refine;
  using detail::vec;
  return {camel_refine(vec({0.0898, -0.7126})), camel_refine(vec({-0.0898, 0.7126})),
          camel_refine(vec({1.7036, -0.7961})), camel_refine(vec({-1.7036, 0.7961}))};
}

// --- composition recipes ----------------------------------------------------

inline std::vector<CompositionComponent> composition_recipe(int which) {
  using B = BasicFunction;
  switch (which) {
    case 1:
      return {{B::griewank, 1, 1},        {B::griewank, 1, 1},        {B::weierstrass, 1, 8},
              {B::weierstrass, 1, 8},     {B::sphere, 1, 1.0 / 5.0},  {B::sphere, 1, 1.0 / 5.0}};
    case 2:
      return {{B::rastrigin, 1, 1},       {B::rastrigin, 1, 1},        {B::weierstrass, 1, 10},
              {B::weierstrass, 1, 10},    {B::griewank, 1, 1.0 / 10},  {B::griewank, 1, 1.0 / 10},
              {B::sphere, 1, 1.0 / 7},    {B::sphere, 1, 1.0 / 7}};
    case 3:
      return {{B::ef8f2, 1, 1.0 / 4},     {B::ef8f2, 1, 1.0 / 10},     {B::weierstrass, 2, 2},
              {B::weierstrass, 2, 1},     {B::griewank, 2, 2},         {B::griewank, 2, 5}};
    case 4:
      return {{B::rastrigin, 1, 4},       {B::rastrigin, 1, 1},        {B::ef8f2, 1, 4},
              {B::ef8f2, 1, 1},           {B::weierstrass, 1, 1.0 / 10}, {B::weierstrass, 2, 1.0 / 5},
              {B::griewank, 2, 1.0 / 10}, {B::griewank, 2, 1.0 / 40}};
    default: break;
  }
  throw std::invalid_argument("composition_recipe: unknown composition " + std::to_string(which));
}

/// Dimension, number of global optima and MaxFEs for each function id.
struct Cec2013Info {
  int dimension;
  std::size_t optima;
  std::size_t max_fes;
};

inline Cec2013Info cec2013_info(int id) {
  static constexpr std::array<Cec2013Info, 20> table{{
      {1, 2, 50000},    {1, 5, 50000},    {1, 1, 50000},    {2, 4, 50000},    {2, 2, 50000},
      {2, 18, 200000},  {2, 36, 200000},  {3, 81, 400000},  {3, 216, 400000}, {2, 12, 200000},
      {2, 6, 200000},   {2, 8, 200000},   {2, 6, 200000},   {3, 6, 400000},   {3, 8, 400000},
      {5, 6, 400000},   {5, 8, 400000},   {10, 6, 400000},  {10, 8, 400000},  {20, 8, 400000}}};
  if (id < 1 || id > 20) throw std::invalid_argument("cec2013: function id must be in 1..20");
  return table[static_cast<std::size_t>(id - 1)];
}

/// Builds CEC'2013 niching function `id` (1..20).
inline Problem make_cec2013_problem(int id) {
  using detail::closed_form;
  using detail::vec;
  const auto info = cec2013_info(id);
  const std::string name = "cec2013/f" + std::to_string(id);
  switch (id) {
    case 1:
      return closed_form(name, Box::uniform(1, 0.0, 30.0), 200.0, {vec({0.0}), vec({30.0})}, info.max_fes,
                         five_uneven_peak_trap);
    case 2:
      return closed_form(name, Box::uniform(1, 0.0, 1.0), 1.0,
                         {vec({0.1}), vec({0.3}), vec({0.5}), vec({0.7}), vec({0.9})}, info.max_fes, equal_maxima);
    case 3: {
      const double x = detail::golden_max([](double t) { return uneven_decreasing_maxima(vec({t})); }, 0.05, 0.11);
      const Vector opt = vec({x});
      return closed_form(name, Box::uniform(1, 0.0, 1.0), uneven_decreasing_maxima(opt), {opt}, info.max_fes,
                         uneven_decreasing_maxima);
    }
    case 4: {
      std::vector<Vector> optima;
      for (const auto& guess : {vec({3.0, 2.0}), vec({-2.805118, 3.131312}), vec({-3.779310, -3.283186}),
                                vec({3.584428, -1.848126})}) {
        optima.push_back(detail::himmelblau_refine(guess));
      }
      return closed_form(name, Box::uniform(2, -6.0, 6.0), 200.0, optima, info.max_fes, himmelblau);
    }
    case 5: {
      auto basins = six_hump_basin_optima();
      std::vector<Vector> optima{basins[0], basins[1]};
      return closed_form(name, Box(vec({-1.9, -1.1}), vec({1.9, 1.1})), six_hump_camel_back(optima[0]), optima,
                         info.max_fes, six_hump_camel_back);
    }
    case 6:
    case 8: {
      const auto dim = static_cast<Eigen::Index>(info.dimension);
      const auto extrema = detail::shubert_factor_extrema(-10.0, 10.0);
      auto optima = detail::shubert_optima(dim, extrema);
      const double value = dim == 2 ? -extrema.min_value * extrema.max_value
                                    : -extrema.min_value * extrema.max_value * extrema.max_value;
      return closed_form(name, Box::uniform(dim, -10.0, 10.0), value, std::move(optima), info.max_fes, shubert);
    }
    case 7:
    case 9: {
      const auto dim = static_cast<Eigen::Index>(info.dimension);
      return closed_form(name, Box::uniform(dim, 0.25, 10.0), 1.0, detail::vincent_optima(dim, 0.25, 10.0),
                         info.max_fes, vincent);
    }
    case 10: {
      std::vector<Vector> optima;
      for (double a : {1.0 / 6, 3.0 / 6, 5.0 / 6}) {
        for (double b : {1.0 / 8, 3.0 / 8, 5.0 / 8, 7.0 / 8}) optima.push_back(vec({a, b}));
      }
      return closed_form(name, Box::uniform(2, 0.0, 1.0), -2.0, optima, info.max_fes, modified_rastrigin);
    }
    default: break;
  }

  // f11..f20: composition functions.
  static constexpr std::array<int, 10> recipe{1, 2, 3, 3, 4, 3, 4, 3, 4, 4};
  const int which = recipe[static_cast<std::size_t>(id - 11)];
  const bool rotated = which >= 3;
  const auto dim = static_cast<Eigen::Index>(info.dimension);
  auto spec = seeded_composition(name, composition_recipe(which), Box::uniform(dim, -5.0, 5.0), rotated,
                                 kCompositionSeedBase + static_cast<std::uint64_t>(id), info.max_fes);
  return make_composition(spec);
}

}  // namespace ceda::bench
