#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "induced/induced_eval.hpp"
#include "induced/measures.hpp"
#include "induced/rng.hpp"

namespace induced {

class MultiIndexSet {
 public:
  /// Throws DomainError on duplicates, negative entries, wrong lengths, or
  /// (when requested) a set that is not downward closed.
  MultiIndexSet(int dimension, std::vector<std::vector<int>> indices,
                bool require_downward_closed = false);

  int dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const std::vector<int>& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<std::vector<int>>& indices() const noexcept { return indices_; }
  bool is_downward_closed() const;
  /// Largest order used in coordinate j.
  int max_order(int j) const;

 private:
  int dimension_;
  std::vector<std::vector<int>> indices_;
};

/// All multi-indices with |lambda| <= n, in lexicographic order.
MultiIndexSet total_degree_set(int d, int n);

class TensorMeasure {
 public:
  explicit TensorMeasure(std::vector<MeasureSpec> marginals, CoefficientRegistry registry = {});
  int dimension() const noexcept { return static_cast<int>(marginals_.size()); }
  const MeasureSpec& marginal(int j) const { return marginals_[static_cast<std::size_t>(j)]; }
  const CoefficientRegistry& registry() const noexcept { return registry_; }

 private:
  std::vector<MeasureSpec> marginals_;
  CoefficientRegistry registry_;
};

/// Draws from the mixture (1/N) sum_lambda mu_lambda. All univariate induced
/// distributions are built up front; sampling afterwards is read-only.
class MixtureSampler {
 public:
  MixtureSampler(MultiIndexSet indices, TensorMeasure measures, double tol = 1e-12);

  std::vector<double> sample(CounterRng& rng) const;

  /// Sample i is drawn from CounterRng(seed, i), so the result does not
  /// depend on `threads`. Row-major, count x d.
  std::vector<double> sample_batch(std::size_t count, std::uint64_t seed,
                                   unsigned threads = 1) const;

  const InducedDistribution& distribution(int coordinate, int order) const;
  const MultiIndexSet& indices() const noexcept { return indices_; }
  const TensorMeasure& measures() const noexcept { return measures_; }

 private:
  MultiIndexSet indices_;
  TensorMeasure measures_;
  double tol_;
  // Coordinates with identical marginals share one slot.
  std::vector<std::size_t> slot_of_;
  std::vector<std::vector<InducedDistribution>> by_slot_;
};

/// One draw; builds a MixtureSampler, so prefer the class for repeated use.
std::vector<double> sample_mixture(const MultiIndexSet& indices, const TensorMeasure& measures,
                                   CounterRng& rng);

struct LSDesign {
  std::size_t M = 0;  ///< samples
  std::size_t N = 0;  ///< basis functions
  int d = 0;
  std::vector<double> samples;  ///< M x d, row-major
  std::vector<double> weights;  ///< w_m = N / sum_lambda p_lambda(X_m)^2
  std::vector<double> V;        ///< M x N, row-major, V(m, n) = p_lambda(n)(X_m)

  double v(std::size_t m, std::size_t n) const { return V[m * N + n]; }
  /// Diagonal of W; the 1/M normalization makes E[V^T W V] = I.
  double w_diag(std::size_t m) const { return weights[m] / static_cast<double>(M); }
};

LSDesign ls_design(const MultiIndexSet& indices, const TensorMeasure& measures,
                   std::span<const double> samples);

/// V^T W V as an N x N row-major matrix.
std::vector<double> gram_matrix(const LSDesign& design);

/// ||V^T W V - I||_2 by power iteration (tolerance 1e-10, at most 1e4 steps).
double gram_discrepancy(const LSDesign& design);

/// Weighted least-squares coefficients in index-set order. Throws
/// IllConditionedDesign when the weighted design is numerically rank deficient.
std::vector<double> least_squares(const LSDesign& design, std::span<const double> f_values);

double c_delta(double delta);

/// Smallest M >= 3 with M / log M >= N (1 + r) / c_delta.
std::size_t sample_count(std::size_t N, double r, double delta);

/// G_d(r) = I_{r^2}(d/2, d/2 + 1).
double equilibrium_cdf(int d, double r);

struct EquilibriumResult {
  std::vector<double> radii;  ///< sorted ||X|| / sqrt(2n)
  double ks_distance = 0.0;
};

/// Samples the total-degree-n mixture of the d-dimensional Gaussian
/// (Freud(2, 0) marginals) and compares scaled radii with G_d.
EquilibriumResult equilibrium_experiment(int d, int n, std::size_t M, std::uint64_t seed,
                                         unsigned threads = 1);

/// Kolmogorov-Smirnov distance between the empirical CDF of sorted data and G.
template <class Cdf>
double ks_distance(std::span<const double> sorted, Cdf&& G) {
  const double M = static_cast<double>(sorted.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double g = G(sorted[i]);
    const double above = static_cast<double>(i + 1) / M - g;
    const double below = g - static_cast<double>(i) / M;
    ks = std::max({ks, above, below});
  }
  return ks;
}

}  // namespace induced
