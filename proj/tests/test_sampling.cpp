#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "induced/error.hpp"
#include "induced/oracle.hpp"
#include "induced/rng.hpp"
#include "induced/sampling.hpp"
#include "induced/special_functions.hpp"

using namespace induced;

namespace {

std::vector<double> column(const std::vector<double>& xs, int d, int j) {
  std::vector<double> out;
  for (std::size_t i = static_cast<std::size_t>(j); i < xs.size(); i += static_cast<std::size_t>(d)) {
    out.push_back(xs[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(CounterRng, DeterministicAndOpenInterval) {
  CounterRng a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.next_open01();
    EXPECT_EQ(u, b.next_open01());
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    differs |= u != c.next_open01();
  }
  EXPECT_TRUE(differs);
}

TEST(CounterRng, NextBelowIsUniform) {
  CounterRng r(3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[r.next_below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(MultiIndexSet, Validation) {
  EXPECT_THROW(MultiIndexSet(2, {{0, 0}, {0, 0}}), DomainError);
  EXPECT_THROW(MultiIndexSet(2, {{0, -1}}), DomainError);
  EXPECT_THROW(MultiIndexSet(2, {{0, 1, 2}}), DomainError);
  EXPECT_THROW(MultiIndexSet(2, {{0, 0}, {1, 1}}, true), DomainError);
  const MultiIndexSet ok(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, true);
  EXPECT_TRUE(ok.is_downward_closed());
  EXPECT_EQ(ok.max_order(0), 1);
  EXPECT_FALSE(MultiIndexSet(1, {{2}}).is_downward_closed());
}

TEST(TotalDegreeSet, Cardinality) {
  const auto s = total_degree_set(1, 3);
  ASSERT_EQ(s.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(s[static_cast<std::size_t>(k)][0], k);
  EXPECT_EQ(total_degree_set(2, 2).size(), 6u);
  EXPECT_EQ(total_degree_set(10, 5).size(), 3003u);
  EXPECT_TRUE(total_degree_set(3, 4).is_downward_closed());
  const auto lex = total_degree_set(2, 2);
  EXPECT_TRUE(std::is_sorted(lex.indices().begin(), lex.indices().end()));
}

TEST(SampleMixture, SingletonZeroIsUniform) {
  const MixtureSampler s(MultiIndexSet(1, {{0}}), TensorMeasure({Jacobi(0, 0)}));
  const auto xs = column(s.sample_batch(10000, 11), 1, 0);
  EXPECT_LE(ks_distance(std::span<const double>(xs), [](double x) { return (x + 1) / 2; }), 0.02);
}

TEST(SampleMixture, SingletonMatchesInducedDistribution) {
  const MixtureSampler s(MultiIndexSet(1, {{2}}), TensorMeasure({Jacobi(0, 0)}));
  const auto xs = column(s.sample_batch(10000, 12), 1, 0);
  const InducedDistribution F2(Jacobi(0, 0), 2);
  EXPECT_LE(ks_distance(std::span<const double>(xs), [&](double x) { return F2.cdf(x); }), 0.02);
}

TEST(SampleMixture, MixedMarginalsPerCoordinate) {
  const MixtureSampler s(MultiIndexSet(2, {{3, 1}}), TensorMeasure({Freud(2, 0), HalfLineFreud(1, 1)}));
  const auto xs = s.sample_batch(10000, 5);
  const InducedDistribution F0(Freud(2, 0), 3), F1(HalfLineFreud(1, 1), 1);
  const auto c0 = column(xs, 2, 0), c1 = column(xs, 2, 1);
  EXPECT_LE(ks_distance(std::span<const double>(c0), [&](double x) { return F0.cdf(x); }), 0.02);
  EXPECT_LE(ks_distance(std::span<const double>(c1), [&](double x) { return F1.cdf(x); }), 0.02);
}

TEST(SampleMixture, DeterministicAcrossRunsAndThreads) {
  const MixtureSampler s(total_degree_set(2, 3), TensorMeasure({Jacobi(0.5, 0.5), Jacobi(0.5, 0.5)}));
  const auto a = s.sample_batch(300, 99, 1);
  const auto b = s.sample_batch(300, 99, 1);
  const auto c = s.sample_batch(300, 99, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  CounterRng r1(5), r2(5);
  EXPECT_EQ(sample_mixture(total_degree_set(2, 3), TensorMeasure({Jacobi(0, 0), Jacobi(0, 0)}), r1),
            sample_mixture(total_degree_set(2, 3), TensorMeasure({Jacobi(0, 0), Jacobi(0, 0)}), r2));
}

TEST(LsDesign, ConstantBasis) {
  const MultiIndexSet one(2, {{0, 0}});
  const TensorMeasure m({Jacobi(0, 0), Jacobi(0, 0)});
  const std::vector<double> X{0.3, -0.2, 0.9, 0.1};
  const auto d = ls_design(one, m, X);
  EXPECT_EQ(d.weights[0], 1.0);
  EXPECT_EQ(d.weights[1], 1.0);
  const auto single = ls_design(one, m, std::vector<double>{0.5, 0.5});
  EXPECT_EQ(gram_matrix(single)[0], 1.0);
  EXPECT_EQ(gram_discrepancy(single), 0.0);
}

TEST(LsDesign, WeightIdentity) {
  const auto L = total_degree_set(2, 4);
  const TensorMeasure m({Jacobi(0, 0), Jacobi(1, 1)});
  const MixtureSampler s(L, m);
  const auto d = ls_design(L, m, s.sample_batch(100, 2));
  for (std::size_t r = 0; r < d.M; ++r) {
    double sum = 0.0;
    for (std::size_t n = 0; n < d.N; ++n) {
      EXPECT_TRUE(std::isfinite(d.v(r, n)));
      sum += d.v(r, n) * d.v(r, n);
    }
    EXPECT_NEAR(d.weights[r] * sum, static_cast<double>(d.N), 1e-12);
  }
}

TEST(LsDesign, GramConcentratesForLegendreSquared) {
  const auto L = total_degree_set(2, 2);
  const TensorMeasure m({Jacobi(0, 0), Jacobi(0, 0)});
  const MixtureSampler s(L, m);
  const auto d = ls_design(L, m, s.sample_batch(2000, 2024));
  EXPECT_LT(gram_discrepancy(d), 0.5);
}

TEST(GramDiscrepancy, OrthonormalColumnsGiveZero) {
  // Gauss-Legendre nodes with M = 4 and weights chosen so that V^T W V = I
  // exactly for the first three Legendre polynomials.
  const auto rule = gauss_rule(jacobi_table(0, 0, 5), 4);
  const MultiIndexSet L(1, {{0}, {1}, {2}});
  const TensorMeasure m({Jacobi(0, 0)});
  auto d = ls_design(L, m, rule.nodes);
  for (std::size_t r = 0; r < d.M; ++r) d.weights[r] = rule.weights[r] * static_cast<double>(d.M);
  EXPECT_LT(gram_discrepancy(d), 1e-12);
}

TEST(GramDiscrepancy, MatchesDenseEigensolver) {
  CounterRng rng(77);
  LSDesign d;
  d.M = 50;
  d.N = 10;
  d.d = 1;
  for (std::size_t i = 0; i < d.M * d.N; ++i) d.V.push_back(2.0 * rng.next_open01() - 1.0);
  for (std::size_t i = 0; i < d.M; ++i) {
    d.weights.push_back(0.5 + rng.next_open01());
    d.samples.push_back(0.0);
  }
  auto G = gram_matrix(d);
  for (std::size_t i = 0; i < d.N; ++i) G[i * d.N + i] -= 1.0;
  EXPECT_NEAR(gram_discrepancy(d), oracle::oracle_dense_specnorm(G, d.N), 1e-9);
}

TEST(LeastSquares, ExactRepresentability) {
  const auto L = total_degree_set(2, 3);
  const TensorMeasure m({Jacobi(0, 0), Jacobi(0, 0)});
  const MixtureSampler s(L, m);
  const auto d = ls_design(L, m, s.sample_batch(200, 8));
  for (std::size_t target : {std::size_t{0}, std::size_t{4}, std::size_t{9}}) {
    std::vector<double> f(d.M);
    for (std::size_t r = 0; r < d.M; ++r) f[r] = d.v(r, target);
    const auto c = least_squares(d, f);
    for (std::size_t n = 0; n < d.N; ++n) EXPECT_NEAR(c[n], n == target ? 1.0 : 0.0, 1e-10);
  }
  std::vector<double> ones(d.M, 1.0);
  const auto c = least_squares(d, ones);
  EXPECT_NEAR(c[0], 1.0, 1e-12);
  for (std::size_t n = 1; n < d.N; ++n) EXPECT_NEAR(c[n], 0.0, 1e-12);
}

TEST(LeastSquares, CubicLegendreExpansion) {
  // x^3 = (3/5) x + (2/5) P_3(x); orthonormal p_1 = sqrt(3) x, p_3 = sqrt(7) P_3.
  const MultiIndexSet L(1, {{0}, {1}, {2}, {3}});
  const TensorMeasure m({Jacobi(0, 0)});
  const MixtureSampler s(L, m);
  const auto d = ls_design(L, m, s.sample_batch(200, 31));
  std::vector<double> f(d.M);
  for (std::size_t r = 0; r < d.M; ++r) f[r] = std::pow(d.samples[r], 3);
  const auto c = least_squares(d, f);
  EXPECT_NEAR(c[0], 0.0, 1e-8);
  EXPECT_NEAR(c[1], 0.6 / std::sqrt(3.0), 1e-8);
  EXPECT_NEAR(c[2], 0.0, 1e-8);
  EXPECT_NEAR(c[3], 0.4 / std::sqrt(7.0), 1e-8);
}

TEST(LeastSquares, RankDeficientDesignRejected) {
  const MultiIndexSet L(1, {{0}, {1}, {2}});
  const TensorMeasure m({Jacobi(0, 0)});
  const auto d = ls_design(L, m, std::vector<double>{0.3, 0.3, 0.3, 0.3});
  try {
    least_squares(d, std::vector<double>{1, 1, 1, 1});
    FAIL() << "expected IllConditionedDesign";
  } catch (const IllConditionedDesign& e) {
    EXPECT_GT(e.discrepancy(), 0.5);
  }
}

TEST(SampleCount, SmallestSatisfyingM) {
  EXPECT_NEAR(c_delta(0.5), 0.1534264097200273, 1e-15);
  const auto M = sample_count(10, 1.0, 0.5);
  const double target = 10 * 2.0 / c_delta(0.5);
  EXPECT_GE(M / std::log(static_cast<double>(M)), target);
  EXPECT_LT((M - 1) / std::log(static_cast<double>(M - 1)), target);
  EXPECT_GE(M, 880u);
  EXPECT_LE(M, 890u);
}

TEST(SampleCount, Monotone) {
  EXPECT_LE(sample_count(10, 1, 0.5), sample_count(11, 1, 0.5));
  EXPECT_LE(sample_count(10, 1, 0.5), sample_count(10, 2, 0.5));
  EXPECT_GE(sample_count(10, 1, 0.3), sample_count(10, 1, 0.5));
  EXPECT_THROW(sample_count(10, 1, 1.0), DomainError);
  EXPECT_THROW(sample_count(10, 0, 0.5), DomainError);
}

TEST(EquilibriumCdf, Values) {
  for (int d : {1, 2, 5, 10}) EXPECT_EQ(equilibrium_cdf(d, 1.0), 1.0);
  EXPECT_NEAR(equilibrium_cdf(2, 1 / std::sqrt(2.0)), 0.75, 1e-14);
  EXPECT_THROW(equilibrium_cdf(2, 1.2), DomainError);
}

TEST(EquilibriumCdf, RadialDensityQuadrature) {
  // G_5(r) = int_0^r t^4 (1 - t^2)^{5/2} dt / int_0^1 (same), by Simpson.
  auto g = [](double t) { return std::pow(t, 4) * std::pow(1 - t * t, 2.5); };
  auto simpson = [&](double b) {
    const int K = 20000;
    const double h = b / K;
    double s = g(0) + g(b);
    for (int k = 1; k < K; ++k) s += (k % 2 ? 4 : 2) * g(k * h);
    return s * h / 3;
  };
  EXPECT_NEAR(equilibrium_cdf(5, 0.6), simpson(0.6) / simpson(1.0), 1e-10);
}

TEST(Equilibrium, OneDimensionalLimit) {
  const auto r = equilibrium_experiment(1, 200, 20000, 7);
  EXPECT_TRUE(std::is_sorted(r.radii.begin(), r.radii.end()));
  EXPECT_GE(r.radii.front(), 0.0);
  EXPECT_LE(r.ks_distance, 0.03);
}
