#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "induced/measures.hpp"
#include "induced/recurrence.hpp"

namespace induced {

/// Approximate median of F_n used to split between the left algorithm and
/// the complementary one.
///   Jacobi:           (beta^2 - alpha^2) / (2n + alpha + beta)^2, and 0 for n = 0
///   half-line Freud:  50 when alpha = 1, otherwise the midpoint of a_-/a_+
///   Freud:            0
///   Custom:           midpoint of the zero hull of p_n (a_0 for n = 0)
double approx_median(const MeasureSpec& spec, int n);

/// Endpoints a_-(n, alpha, rho), a_+(n, alpha, rho) of the bulk support of a
/// half-line Freud induced measure.
std::pair<double, double> halffreud_bulk_interval(double alpha, double rho, int n);

/// Quadrature size used when none is given: 10 for Jacobi, 25 for half-line
/// Freud with alpha = 1 (and Freud with alpha = 2), n + 10 otherwise.
int default_quadrature_size(const MeasureSpec& spec, int n);

/// Intermediate data of one Jacobi evaluation.
struct JacobiEvaluation {
  double value = 0.0;  ///< F_n(x)
  /// True when x > x_0 and the value was obtained as 1 - F_n(-x) with
  /// (alpha, beta) interchanged; the fields below then refer to that
  /// interchanged evaluation.
  bool complemented = false;
  double alpha = 0.0;
  double beta = 0.0;
  double x = 0.0;
  /// log of b_0 of the modified measure (includes every scaling).
  double log_b0 = 0.0;
  /// b_0 .. b_M of the modified measure, with b_0 stored as 1.
  std::vector<double> modified_b;
  /// Value of the error bound for the evaluation that was carried out.
  double error_bound = 0.0;
};

double idist_jacobi(double alpha, double beta, int n, double x, int M = 10);
JacobiEvaluation idist_jacobi_detailed(double alpha, double beta, int n, double x, int M = 10);

/// C(alpha, beta, n, M) * prod_{j=0}^{M} b_j, evaluated in log space.
/// b_0 is taken as modified_b[0] * exp(log_b0_scale).
double jacobi_error_bound(double alpha, double beta, int n, int M,
                          std::span<const double> modified_b, double log_b0_scale = 0.0);

/// Left algorithm F_n(x), meant for 0 <= x <= x_0.
double idist_halffreud(double alpha, double rho, int n, double x, std::optional<int> M = {},
                       const CoefficientRegistry& registry = {});
/// Complementary algorithm 1 - F_n(x), meant for x >= x_0.
double idist_halffreud_comp(double alpha, double rho, int n, double x,
                            std::optional<int> M = {},
                            const CoefficientRegistry& registry = {});

double idist_freud(double alpha, double rho, int n, double x, std::optional<int> M = {},
                   const CoefficientRegistry& registry = {});

/// A measure together with an order n, with everything that does not
/// depend on x precomputed. Copies share the (immutable) state.
class InducedDistribution {
 public:
  InducedDistribution(MeasureSpec spec, int n, std::optional<int> M = {},
                      const CoefficientRegistry& registry = {});

  const MeasureSpec& spec() const;
  int order() const;
  Support support() const;
  std::span<const double> zeros() const;
  double log_leading_coeff() const;
  double median_guess() const;
  int quadrature_size() const;

  /// F_n(x) clamped to [0, 1]; exactly 0 / 1 at the support ends.
  double cdf(double x) const;
  double operator()(double x) const { return cdf(x); }

  /// Recurrence table of mu_n with N + 1 entries (cached for the default N).
  RecurrenceTable induced_table(int N) const;
  /// Gauss rule of mu_n (cached for the default N).
  const QuadratureRule& induced_rule() const;
  int induced_rule_size() const;

  const CoefficientRegistry& registry() const;

  struct State;

 private:
  std::shared_ptr<const State> state_;
};

/// F_n(x) for the distribution. Throws DomainError outside the support.
double idist(const InducedDistribution& dist, double x);

/// Number of evaluations whose raw value fell outside [-1e-8, 1 + 1e-8]
/// before clamping (process-wide).
std::uint64_t clamp_warning_count();

}  // namespace induced
