#pragma once

/// Unshifted minimization building blocks (minimum 0 at the origin
/// unless noted) used by the composition and study problems.

#include "ceda/core.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ceda::bench {

inline double sphere(const Vector& z) { return z.squaredNorm(); }

inline double griewank(const Vector& z) {
  double sum = 0.0;
  double prod = 1.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i] / 4000.0;
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

inline double rastrigin(const Vector& z) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i] - 10.0 * std::cos(2.0 * std::numbers::pi * z[i]) + 10.0;
  }
  return sum;
}

/// Weierstrass with a = 0.5, b = 3, k_max = 20.
inline double weierstrass(const Vector& z) {
  constexpr int k_max = 20;
  constexpr double a = 0.5;
  constexpr double b = 3.0;
  static const auto powers = [] {
    std::array<std::pair<double, double>, k_max + 1> t{};
    for (int k = 0; k <= k_max; ++k) t[static_cast<std::size_t>(k)] = {std::pow(a, k), std::pow(b, k)};
    return t;
  }();
  static const double offset = [] {
    double s = 0.0;
    for (const auto& [ak, bk] : powers) s += ak * std::cos(std::numbers::pi * bk);
    return s;
  }();

  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    for (const auto& [ak, bk] : powers) sum += ak * std::cos(2.0 * std::numbers::pi * bk * (z[i] + 0.5));
  }
  return sum - static_cast<double>(z.size()) * offset;
}

/// Expanded Griewank-of-Rosenbrock, shifted so the minimum sits at the origin.
inline double ef8f2(const Vector& z) {
  auto f8f2 = [](double x, double y) {
    const double r = 100.0 * (x * x - y) * (x * x - y) + (1.0 - x) * (1.0 - x);
    return 1.0 + r * r / 4000.0 - std::cos(r);
  };
  const Eigen::Index n = z.size();
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < n; ++i) sum += f8f2(z[i] + 1.0, z[i + 1] + 1.0);
  sum += f8f2(z[n - 1] + 1.0, z[0] + 1.0);
  return sum;
}

/// High-conditioned elliptic: coordinate weights grow geometrically from 1
/// to 1e6.
inline double elliptic(const Vector& z) {
  const Eigen::Index n = z.size();
  if (n == 1) return z[0] * z[0];
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sum += std::pow(1e6, static_cast<double>(i) / static_cast<double>(n - 1)) * z[i] * z[i];
  }
  return sum;
}

/// Classic Rosenbrock, minimum 0 at (1, ..., 1).
inline double rosenbrock(const Vector& z) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i] * z[i] - z[i + 1];
    const double b = z[i] - 1.0;
    sum += 100.0 * a * a + b * b;
  }
  return sum;
}

}  // namespace ceda::bench
