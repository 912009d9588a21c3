#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "induced/error.hpp"
#include "induced/measures.hpp"
#include "induced/recurrence.hpp"
#include "induced/special_functions.hpp"

using namespace induced;

namespace {

RecurrenceTable legendre(int N) { return jacobi_table(0.0, 0.0, N); }

// Orthonormal Legendre values via Bonnet's recursion in long double.
std::vector<long double> bonnet(long double x, int n) {
  std::vector<long double> P(static_cast<std::size_t>(n) + 1);
  P[0] = 1.0L;
  if (n >= 1) P[1] = x;
  for (int k = 1; k < n; ++k) {
    P[static_cast<std::size_t>(k) + 1] =
        ((2 * k + 1) * x * P[static_cast<std::size_t>(k)] - k * P[static_cast<std::size_t>(k) - 1]) /
        (k + 1);
  }
  for (int k = 0; k <= n; ++k) P[static_cast<std::size_t>(k)] *= std::sqrt(2.0L * k + 1.0L);
  return P;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

}  // namespace

TEST(EvalPoly, LegendreDegreeOne) {
  const auto p = eval_poly(legendre(4), 0.5, 1);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_NEAR(p[1], std::sqrt(3.0) * 0.5, 1e-15);
}

TEST(EvalPoly, DegreeZeroIsInverseSqrtMass) {
  EXPECT_EQ(eval_poly(jacobi_table(1.5, 0.2, 3), -0.7, 0)[0], 1.0);
  const auto scaled = legendre(3).with_mass(4.0);
  EXPECT_DOUBLE_EQ(eval_poly(scaled, 0.1, 0)[0], 0.5);
}

TEST(EvalPoly, LegendreMatchesBonnetRecursion) {
  const auto p = eval_poly(legendre(25), 0.3, 20);
  const auto ref = bonnet(0.3L, 20);
  for (int k = 0; k <= 20; ++k) {
    EXPECT_LT(rel(p[static_cast<std::size_t>(k)], static_cast<double>(ref[static_cast<std::size_t>(k)])), 1e-13)
        << "k=" << k;
  }
}

TEST(EvalPoly, TooShortTableThrows) {
  EXPECT_THROW(eval_poly(legendre(3), 0.0, 4), InsufficientCoefficients);
}

TEST(RatioSeq, LegendreAtTwo) {
  const auto r = ratio_seq(legendre(3), 2.0, 1);
  EXPECT_NEAR(r[1], 2.0 * std::sqrt(3.0), 1e-14);
}

TEST(RatioSeq, MatchesEvalPolyRatios) {
  const auto t = legendre(12);
  const auto r = ratio_seq(t, 5.0, 10);
  const auto p = eval_poly(t, 5.0, 10);
  for (int j = 1; j <= 10; ++j) {
    const auto k = static_cast<std::size_t>(j);
    EXPECT_LT(rel(r[k], p[k] / p[k - 1]), 1e-12) << "j=" << j;
  }
}

TEST(RatioSeq, NegativeLeftOfSupport) {
  const auto r = ratio_seq(legendre(5), -5.0, 3);
  for (int j = 1; j <= 3; ++j) EXPECT_LT(r[static_cast<std::size_t>(j)], 0.0);
}

TEST(RatioSeq, InsideZeroHullRejected) {
  EXPECT_THROW(ratio_seq(legendre(10), 0.1, 6), DomainError);
  EXPECT_NO_THROW(ratio_seq(legendre(10), 0.1, 6, false));
}

TEST(NormalizedSeq, FirstTerms) {
  const auto C = normalized_seq(legendre(5), 0.4, 3);
  EXPECT_DOUBLE_EQ(C[0], 1.0);
  EXPECT_NEAR(C[1], 0.4 * std::sqrt(3.0), 1e-15);
}

TEST(NormalizedSeq, MatchesDirectRatio) {
  const auto t = legendre(20);
  const auto C = normalized_seq(t, 0.9, 15);
  const auto p = eval_poly(t, 0.9, 15);
  double sum = 0.0;
  for (int j = 0; j < 15; ++j) sum += p[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
  EXPECT_NEAR(C[15], p[15] / std::sqrt(sum), 1e-12);
}

TEST(NormalizedSeq, FiniteFarOutside) {
  const auto C = normalized_seq(legendre(400), 1e6, 399);
  for (double c : C) EXPECT_TRUE(std::isfinite(c));
}

TEST(ReconstructPoly, DegreeZero) {
  const auto t = legendre(3).with_mass(9.0);
  const auto C = normalized_seq(t, 0.2, 0);
  EXPECT_DOUBLE_EQ(reconstruct_poly(C), 1.0 / 3.0);
}

TEST(ReconstructPoly, MatchesEvalPoly) {
  const auto t = legendre(12);
  for (double x : {0.5, -0.83, 0.0, 1.7}) {
    const auto C = normalized_seq(t, x, 10);
    EXPECT_LT(rel(reconstruct_poly(C), eval_poly(t, x, 10)[10]), 1e-12) << "x=" << x;
  }
}

TEST(ReconstructPoly, LogFormAgreesWithRatioProduct) {
  const auto t = legendre(210);
  const auto C = normalized_seq(t, 3.0, 200);
  const auto lp = reconstruct_poly_log(C);
  const auto r = ratio_seq(t, 3.0, 200);
  double log_prod = std::log(r[0]);
  for (int j = 1; j <= 200; ++j) log_prod += std::log(std::abs(r[static_cast<std::size_t>(j)]));
  EXPECT_TRUE(std::isfinite(lp.log_abs));
  EXPECT_EQ(lp.sign, 1);
  EXPECT_LT(std::abs(lp.log_abs - log_prod) / std::abs(log_prod), 1e-10);
}

TEST(GaussRule, SmallLegendreRules) {
  const auto r1 = gauss_rule(legendre(3), 1);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1.nodes[0], 0.0, 1e-16);
  EXPECT_NEAR(r1.weights[0], 1.0, 1e-15);

  const auto r2 = gauss_rule(legendre(3), 2);
  EXPECT_NEAR(r2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(r2.weights[1], 0.5, 1e-15);
}

TEST(GaussRule, LaguerreFactorialMoment) {
  const auto rule = gauss_rule(laguerre_table(0.0, 6), 5);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) s += rule.weights[k] * std::pow(rule.nodes[k], 9);
  EXPECT_LT(rel(s, 362880.0), 1e-12);
}

TEST(GaussRule, WeightsSumToMassAndNodesIncrease) {
  const auto t = jacobi_table(-0.6, 3.2, 40).with_mass(2.5);
  const auto rule = gauss_rule(t, 40);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    EXPECT_GT(rule.weights[k], 0.0);
    if (k > 0) {
      EXPECT_GT(rule.nodes[k], rule.nodes[k - 1]);
    }
    EXPECT_GT(rule.nodes[k], -1.0);
    EXPECT_LT(rule.nodes[k], 1.0);
    s += rule.weights[k];
  }
  EXPECT_LT(rel(s, 2.5), 1e-13);
}

TEST(GaussRule, OrthonormalityOfBuiltInTables) {
  const std::vector<RecurrenceTable> tables{legendre(30), jacobi_table(2.0, -0.5, 30),
                                            laguerre_table(1.5, 30), hermite_table(0.0, 30),
                                            hermite_table(2.0, 30)};
  for (const auto& t : tables) {
    const auto rule = gauss_rule(t, 25);
    std::vector<std::vector<double>> P;
    for (std::size_t k = 0; k < rule.size(); ++k) P.push_back(eval_poly(t, rule.nodes[k], 20));
    for (int n = 0; n <= 20; ++n) {
      for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < rule.size(); ++k) {
          s += rule.weights[k] * P[k][static_cast<std::size_t>(n)] * P[k][static_cast<std::size_t>(m)];
        }
        EXPECT_NEAR(s, n == m ? 1.0 : 0.0, 1e-12) << n << "," << m;
      }
    }
  }
}

TEST(GaussRule, TooShortTableThrows) { EXPECT_THROW(gauss_rule(legendre(3), 4), InsufficientCoefficients); }

TEST(PolyZeros, Legendre) {
  const auto z1 = poly_zeros(legendre(4), 1);
  ASSERT_EQ(z1.size(), 1u);
  EXPECT_NEAR(z1[0], 0.0, 1e-16);
  const auto z2 = poly_zeros(legendre(4), 2);
  EXPECT_NEAR(z2[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(z2[1], 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(PolyZeros, JacobiInterlacing) {
  const auto t = jacobi_table(1.0, 2.0, 10);
  const auto z8 = poly_zeros(t, 8);
  const auto z7 = poly_zeros(t, 7);
  for (double z : z8) {
    EXPECT_GT(z, -1.0);
    EXPECT_LT(z, 1.0);
  }
  for (std::size_t k = 0; k < z7.size(); ++k) {
    EXPECT_LT(z8[k], z7[k]);
    EXPECT_LT(z7[k], z8[k + 1]);
  }
  for (double z : z8) EXPECT_NEAR(eval_poly(t, z, 8)[8], 0.0, 1e-12);
}

TEST(LogLeadingCoeff, SmallCases) {
  EXPECT_EQ(log_leading_coeff(jacobi_table(0.3, 0.1, 2), 0), 0.0);
  EXPECT_NEAR(log_leading_coeff(legendre(2), 1), std::log(std::sqrt(3.0)), 1e-15);
}

TEST(LogLeadingCoeff, LegendreDegreeThousand) {
  const int n = 1000;
  const double lg = log_leading_coeff(legendre(n), n);
  // gamma_n = sqrt(2n+1) (2n)! / (2^n (n!)^2)
  const double ref = 0.5 * std::log(2.0 * n + 1) + std::lgamma(2.0 * n + 1) - n * std::numbers::ln2 -
                     2.0 * std::lgamma(n + 1.0);
  EXPECT_TRUE(std::isfinite(lg));
  EXPECT_NEAR(lg, ref, 1e-10 * std::abs(ref));
  EXPECT_TRUE(std::isinf(std::exp(2.0 * lg)));
}

TEST(SpecialFunctions, TrivialValues) {
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_NEAR(beta(1.0, 1.0), 1.0, 1e-15);
  for (double a : {0.3, 1.0, 4.5}) {
    for (double b : {0.7, 2.0, 11.0}) EXPECT_EQ(reg_inc_beta(1.0, a, b), 1.0);
  }
  EXPECT_NEAR(reg_inc_beta(0.5, 1.0, 2.0), 0.75, 1e-15);
}

TEST(SpecialFunctions, LogGammaAgainstLibm) {
  for (double x : {0.01, 0.5, 1.5, 3.7, 10.0, 171.3, 1234.5}) {
    EXPECT_LT(std::abs(log_gamma(x) - std::lgamma(x)), 1e-13 * std::max(1.0, std::abs(std::lgamma(x))))
        << "x=" << x;
  }
  EXPECT_THROW(log_gamma(0.0), DomainError);
}

TEST(SpecialFunctions, IncompleteBetaBinomialForm) {
  // I_x(a, b) = sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^{a+b-1-j} for integer a, b.
  for (int a : {1, 2, 5}) {
    for (int b : {1, 3, 7}) {
      for (double x : {0.05, 0.3, 0.5, 0.8, 0.97}) {
        const int m = a + b - 1;
        double ref = 0.0;
        for (int j = a; j <= m; ++j) {
          const double c = std::exp(std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0));
          ref += c * std::pow(x, j) * std::pow(1.0 - x, m - j);
        }
        EXPECT_NEAR(reg_inc_beta(x, a, b), ref, 1e-13) << a << "," << b << "," << x;
      }
    }
  }
  EXPECT_THROW(reg_inc_beta(1.5, 1.0, 1.0), DomainError);
}

TEST(SpecialFunctions, Erf) {
  EXPECT_EQ(induced::erf(0.0), 0.0);
  for (double x : {-3.0, -0.4, 0.25, 1.0, 5.0}) EXPECT_NEAR(induced::erf(x), std::erf(x), 1e-15);
}
