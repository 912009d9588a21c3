#pragma once

#include <span>
#include <vector>

#include "induced/measures.hpp"
#include "induced/recurrence.hpp"

namespace induced::oracle {

// Brute-force references for testing: direct quadrature of p_n^2 dmu and
// the discretized Stieltjes procedure. Deliberately independent of the
// modification machinery.

/// F_n for a built-in measure by double-exponential quadrature on the panels
/// between consecutive zeros of p_n. Panel integrals are computed once.
class OracleDistribution {
 public:
  OracleDistribution(MeasureSpec spec, int n, const CoefficientRegistry& registry = {});

  double cdf(double x) const;
  /// Integral of p_n^2 dmu over the whole support (should be 1).
  double total_mass() const;
  /// Density p_n(x)^2 w(x) / c.
  double density(double x) const;
  /// Error target claimed for cdf values.
  double target() const { return target_; }

 private:
  struct Panel {
    double lo;
    double hi;
    double integral;
  };

  double log_density(double x, double one_minus_x, double one_plus_x) const;
  double integrate(double lo, double hi) const;

  MeasureSpec spec_;
  int n_;
  RecurrenceTable table_;
  std::vector<double> sqrt_b_;
  double log_c_;
  double target_;
  std::vector<Panel> panels_;
  std::vector<double> prefix_;  // prefix_[k] = sum of panels before k
  std::vector<double> suffix_;  // suffix_[k] = sum of panels after k
};

double oracle_idist(const MeasureSpec& spec, int n, double x);

struct PolyFactor {
  double center;
  int power;
};

/// Recurrence coefficients (N + 1 entries, orthonormal convention, b_0 the
/// absolute total mass) of prod (x - c_i)^{e_i} dmu, by the Stieltjes
/// procedure on a Gauss rule of the base measure.
RecurrenceTable oracle_stieltjes(const MeasureSpec& base, std::span<const PolyFactor> factors,
                                 int N, const CoefficientRegistry& registry = {});

/// Spectral norm of a symmetric n x n row-major matrix via cyclic Jacobi rotations.
double oracle_dense_specnorm(std::span<const double> matrix, std::size_t n);

}  // namespace induced::oracle
