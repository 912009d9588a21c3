#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "induced/error.hpp"
#include "induced/measures.hpp"
#include "induced/modification.hpp"
#include "induced/oracle.hpp"

using namespace induced;

namespace {

void expect_close(const RecurrenceTable& got, const RecurrenceTable& want, std::size_t count,
                  double tol) {
  ASSERT_GE(got.size(), count);
  ASSERT_GE(want.size(), count);
  for (std::size_t j = 0; j < count; ++j) {
    EXPECT_NEAR(got.a(j), want.a(j), tol) << "a_" << j;
    EXPECT_NEAR(got.b(j), want.b(j), tol * std::max(1.0, want.b(j))) << "b_" << j;
  }
}

}  // namespace

TEST(LinearModification, LegendreMasses) {
  const auto t = jacobi_table(0, 0, 6);
  EXPECT_NEAR(linear_modification(t, 2.0).b(0), 2.0, 1e-15);
  const auto m = linear_modification(t, -2.0);
  EXPECT_NEAR(m.b(0), 2.0, 1e-15);
  EXPECT_NEAR(m.a(0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(m.b(1), 11.0 / 36.0, 1e-15);
  EXPECT_EQ(m.size(), t.size() - 1);
}

TEST(LinearModification, MatchesStieltjes) {
  const auto base = jacobi_table(1, 2, 13);
  for (double y0 : {-2.0, -1.3, 1.7, 3.0}) {
    const oracle::PolyFactor f{y0, 1};
    const auto want = oracle::oracle_stieltjes(Jacobi(1, 2), std::span(&f, 1), 12);
    expect_close(linear_modification(base, y0), want, 13, 1e-12);
  }
}

TEST(LinearModification, InsideZeroHullRejected) {
  EXPECT_THROW(linear_modification(jacobi_table(0, 0, 8), 0.2), DomainError);
  EXPECT_THROW(linear_modification(jacobi_table(0, 0, 0), 2.0), InsufficientCoefficients);
}

TEST(LinearModification, MassIsFirstMoment) {
  const auto t = jacobi_table(0.4, -0.3, 10).with_mass(3.0);
  for (double y0 : {-4.0, 1.5}) {
    EXPECT_NEAR(linear_modification(t, y0).b(0), std::abs(t.a(0) - y0) * 3.0, 1e-14);
  }
}

TEST(QuadraticModification, LegendreAtZero) {
  const auto m = quadratic_modification(jacobi_table(0, 0, 6), 0.0);
  EXPECT_NEAR(m.b(0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.a(0), 0.0, 1e-16);
  EXPECT_EQ(m.size(), 5u);
}

TEST(QuadraticModification, MatchesStieltjes) {
  const auto base = jacobi_table(1, 1, 14);
  const oracle::PolyFactor f{0.3, 2};
  const auto want = oracle::oracle_stieltjes(Jacobi(1, 1), std::span(&f, 1), 12);
  expect_close(quadratic_modification(base, 0.3), want, 13, 1e-12);

  const auto base12 = jacobi_table(1, 2, 14);
  for (double z : {-2.0, -0.9, 0.0, 0.55, 4.0}) {
    const oracle::PolyFactor g{z, 2};
    const auto w = oracle::oracle_stieltjes(Jacobi(1, 2), std::span(&g, 1), 12);
    expect_close(quadratic_modification(base12, z), w, 13, 1e-12);
  }
}

TEST(QuadraticModification, FiniteAtPolynomialZero) {
  const auto t = jacobi_table(0, 0, 12);
  const auto z = poly_zeros(t, 5);
  const auto m = quadratic_modification(t, z[1]);
  for (std::size_t j = 0; j < m.size(); ++j) {
    EXPECT_TRUE(std::isfinite(m.a(j)));
    EXPECT_GT(m.b(j), 0.0);
  }
}

TEST(QuadraticModification, MassIsSecondMoment) {
  const auto t = jacobi_table(2.5, 0.5, 10).with_mass(0.7);
  for (double z : {-3.0, 0.1, 0.8}) {
    const double want = 0.7 * ((t.a(0) - z) * (t.a(0) - z) + t.b(1));
    EXPECT_NEAR(quadratic_modification(t, z).b(0), want, 1e-14);
  }
}

TEST(QuadraticModification, GaussRulesConsistent) {
  // int (x - z)^2 q dmu with the original 12-point rule equals int q dmu~~ with
  // the modified 5-point rule, for q of degree 9.
  const auto t = jacobi_table(-0.4, 1.3, 14);
  const double z = 0.37;
  const auto m = quadratic_modification(t, z);
  auto q = [](double x) { return std::pow(x, 9) - 2 * std::pow(x, 4) + 0.5 * x + 1.0; };
  const auto r0 = gauss_rule(t, 12);
  const auto r1 = gauss_rule(m, 5);
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t k = 0; k < r0.size(); ++k) s0 += r0.weights[k] * (r0.nodes[k] - z) * (r0.nodes[k] - z) * q(r0.nodes[k]);
  for (std::size_t k = 0; k < r1.size(); ++k) s1 += r1.weights[k] * q(r1.nodes[k]);
  EXPECT_NEAR(s0, s1, 1e-13);
}

TEST(RepeatedQuadratic, EmptyIsIdentity) {
  const auto t = jacobi_table(0.2, 0.9, 8);
  const auto same = repeated_quadratic(t, {}, 0.0);
  expect_close(same, t, t.size(), 0.0);
}

TEST(RepeatedQuadratic, LegendreInducedMeasure) {
  const auto t = jacobi_table(0, 0, 16);
  const auto zeros = poly_zeros(t, 2);
  const auto mu2 = repeated_quadratic(t, zeros, 2.0 * log_leading_coeff(t, 2));
  EXPECT_NEAR(mu2.b(0), 1.0, 1e-14);
  const std::vector<oracle::PolyFactor> f{{zeros[0], 2}, {zeros[1], 2}};
  const auto want = oracle::oracle_stieltjes(Jacobi(0, 0), f, 12);
  for (std::size_t j = 0; j <= 12; ++j) {
    EXPECT_NEAR(mu2.a(j), want.a(j), 1e-12);
    if (j > 0) {
      EXPECT_NEAR(mu2.b(j), want.b(j), 1e-12);
    }
  }
}

TEST(RepeatedQuadratic, TwoCallsMatchRepeatedCenter) {
  const auto t = jacobi_table(1.5, -0.5, 12);
  const std::vector<double> c{0.25, 0.25};
  const auto once = repeated_quadratic(t, c, 0.0);
  const auto twice = quadratic_modification(quadratic_modification(t, 0.25), 0.25);
  expect_close(once, twice, once.size(), 1e-13);
  const oracle::PolyFactor quartic{0.25, 4};
  const auto want = oracle::oracle_stieltjes(Jacobi(1.5, -0.5), std::span(&quartic, 1), 8);
  expect_close(once, want, 9, 1e-12);
}

TEST(RepeatedQuadratic, InsufficientHeadroom) {
  const std::vector<double> c{0.1, 0.2, 0.3};
  EXPECT_THROW(repeated_quadratic(jacobi_table(0, 0, 5), c, 0.0), InsufficientCoefficients);
}
