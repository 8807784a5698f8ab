#pragma once

/// Maximum-likelihood Gaussian estimation from selected solutions,
/// the generation archive that widens the covariance estimate, and sampling.

#include "ceda/core.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ceda {

/// Solutions picked by selection in one generation.
struct SelectedSet {
  std::vector<Individual> members;
  std::size_t generation = 0;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  Eigen::Index dimension() const { return members.empty() ? 0 : members.front().genome.size(); }
};

/// FIFO window over the selected sets of the most recent generations.
///
/// Holds at most `capacity` sets; pushing into a full archive evicts the
/// oldest set. A capacity of zero keeps the archive permanently empty.
class Archive {
 public:
  explicit Archive(std::size_t capacity = 0) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  const std::deque<SelectedSet>& sets() const { return sets_; }
  bool empty() const { return sets_.empty(); }

  std::size_t member_count() const {
    std::size_t n = 0;
    for (const auto& s : sets_) n += s.size();
    return n;
  }

  /// In-place push; see archive_push().
  void push(SelectedSet selected) {
    if (!sets_.empty() && selected.generation <= sets_.back().generation) {
      throw std::invalid_argument("Archive::push: generation tags must strictly increase");
    }
    if (capacity_ == 0) return;
    if (sets_.size() == capacity_) sets_.pop_front();
    sets_.push_back(std::move(selected));
  }

 private:
  std::size_t capacity_;
  std::deque<SelectedSet> sets_;
};

/// Returns a copy of `archive` with `selected` appended, evicting the oldest
/// set when full.
inline Archive archive_push(Archive archive, SelectedSet selected) {
  archive.push(std::move(selected));
  return archive;
}

/// Coordinate-wise mean of the selected genomes.
inline Vector estimate_mean(const SelectedSet& selected) {
  if (selected.empty()) throw std::invalid_argument("estimate_mean: empty selected set");
  const Eigen::Index n = selected.dimension();
  Vector sum = Vector::Zero(n);
  for (const auto& ind : selected.members) {
    if (ind.genome.size() != n) throw std::invalid_argument("estimate_mean: mixed dimensions");
    sum += ind.genome;
  }
  return sum / static_cast<double>(selected.size());
}

namespace detail {

inline void check_dimension(const Individual& ind, Eigen::Index n, const char* where) {
  if (ind.genome.size() != n) throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}

/// Biased scatter (divide by count) of the given deviation columns.
inline Matrix scatter(const Matrix& deviations) {
  const Eigen::Index n = deviations.rows();
  Matrix c = Matrix::Zero(n, n);
  if (deviations.cols() == 0) return c;
  c.selfadjointView<Eigen::Lower>().rankUpdate(deviations, 1.0 / static_cast<double>(deviations.cols()));
  c.triangularView<Eigen::StrictlyUpper>() = c.transpose();
  return c;
}

}  // namespace detail

/// Scatter of the selected genomes about `mean`, normalized by |selected|.
inline Matrix estimate_covariance(const SelectedSet& selected, const Vector& mean) {
  if (selected.empty()) throw std::invalid_argument("estimate_covariance: empty selected set");
  const Eigen::Index n = mean.size();
  Matrix dev(n, static_cast<Eigen::Index>(selected.size()));
  Eigen::Index col = 0;
  for (const auto& ind : selected.members) {
    detail::check_dimension(ind, n, "estimate_covariance");
    dev.col(col++) = ind.genome - mean;
  }
  return detail::scatter(dev);
}

/// Scatter about `mean` of the pooled multiset archive ∪ selected,
/// normalized by the pooled count. `mean` is the mean of `selected` alone.
inline Matrix estimate_covariance_with_archive(const SelectedSet& selected, const Archive& archive,
                                               const Vector& mean) {
  if (selected.empty()) throw std::invalid_argument("estimate_covariance_with_archive: empty selected set");
  const Eigen::Index n = mean.size();
  const auto pooled = static_cast<Eigen::Index>(selected.size() + archive.member_count());
  Matrix dev(n, pooled);
  Eigen::Index col = 0;
  for (const auto& set : archive.sets()) {
    for (const auto& ind : set.members) {
      detail::check_dimension(ind, n, "estimate_covariance_with_archive");
      dev.col(col++) = ind.genome - mean;
    }
  }
  for (const auto& ind : selected.members) {
    detail::check_dimension(ind, n, "estimate_covariance_with_archive");
    dev.col(col++) = ind.genome - mean;
  }
  return detail::scatter(dev);
}

/// The covariance ladder could not be factorized; the population collapsed
/// or the estimate is not finite.
class DegenerateModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Multivariate normal with a cached lower Cholesky factor.
///
/// `factor * factor^T == covariance + jitter_applied * I`.
struct GaussianModel {
  Vector mean;
  Matrix covariance;
  Matrix factor;
  double jitter_applied = 0.0;

  Eigen::Index dimension() const { return mean.size(); }

  Matrix regularized_covariance() const {
    return covariance + jitter_applied * Matrix::Identity(dimension(), dimension());
  }
};

inline constexpr double kJitterStartScale = 1e-10;
inline constexpr double kJitterCap = 1e6;

/// Symmetrizes `covariance`, factorizes it, and climbs a jitter ladder
/// (x10 per step, starting at 1e-10 * max(1, trace/n)) when it is not
/// positive definite.
inline GaussianModel build_model(const Vector& mean, const Matrix& covariance) {
  const Eigen::Index n = mean.size();
  if (n == 0 || covariance.rows() != n || covariance.cols() != n) {
    throw std::invalid_argument("build_model: covariance must be square and match the mean");
  }
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw DegenerateModelError("build_model: non-finite model parameters");
  }

  GaussianModel model;
  model.mean = mean;
  model.covariance = 0.5 * (covariance + covariance.transpose());

  auto try_factor = [&](const Matrix& m) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) return false;
    Matrix l = llt.matrixL();
    if (!l.allFinite() || (l.diagonal().array() <= 0.0).any()) return false;
    model.factor = std::move(l);
    return true;
  };

  if (try_factor(model.covariance)) return model;

  const Matrix identity = Matrix::Identity(n, n);
  const double scale = std::max(1.0, model.covariance.trace() / static_cast<double>(n));
  for (double eps = kJitterStartScale * scale; eps <= kJitterCap; eps *= 10.0) {
    if (try_factor(model.covariance + eps * identity)) {
      model.jitter_applied = eps;
      return model;
    }
  }
  throw DegenerateModelError("build_model: covariance not factorizable within the jitter cap");
}

/// Draws `count` vectors mean + factor * z, z ~ N(0, I).
template <class Urbg>
std::vector<Vector> sample(const GaussianModel& model, std::size_t count, Urbg& rng) {
  std::vector<Vector> out;
  out.reserve(count);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Eigen::Index n = model.dimension();
  Vector z(n);
  for (std::size_t k = 0; k < count; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) z[i] = normal(rng);
    out.push_back(model.mean + model.factor.triangularView<Eigen::Lower>() * z);
  }
  return out;
}

/// Log of the normal density at `x`, using the regularized covariance.
inline double log_density(const GaussianModel& model, const Vector& x) {
  const Eigen::Index n = model.dimension();
  if (x.size() != n) throw std::invalid_argument("log_density: dimension mismatch");
  const Vector whitened = model.factor.triangularView<Eigen::Lower>().solve(x - model.mean);
  const double log_det = 2.0 * model.factor.diagonal().array().log().sum();
  return -0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) + log_det + whitened.squaredNorm());
}

}  // namespace ceda
