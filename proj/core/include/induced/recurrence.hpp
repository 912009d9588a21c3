#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace induced {

/// Three-term recurrence coefficients (a_j, b_j), j = 0..N, of an
/// orthonormal polynomial family:
///
///   x p_j(x) = sqrt(b_j) p_{j-1}(x) + a_j p_j(x) + sqrt(b_{j+1}) p_{j+1}(x),
///
/// seeded with p_{-1} = 0 and p_0 = 1/sqrt(b_0). b_0 is the total mass of the
/// measure (1 for every built-in probability measure).
class RecurrenceTable {
 public:
  RecurrenceTable() = default;

  /// Throws DomainError unless the lengths agree, every a_j is finite and
  /// every b_j is finite and positive.
  RecurrenceTable(std::vector<double> a, std::vector<double> b);

  std::size_t size() const noexcept { return a_.size(); }
  bool empty() const noexcept { return a_.empty(); }

  double a(std::size_t j) const { return a_[j]; }
  double b(std::size_t j) const { return b_[j]; }
  std::span<const double> a() const noexcept { return a_; }
  std::span<const double> b() const noexcept { return b_; }

  /// First `length` coefficient pairs.
  RecurrenceTable truncated(std::size_t length) const;

  /// Same table with b_0 replaced (rescaled measure).
  RecurrenceTable with_mass(double b0) const;

  friend bool operator==(const RecurrenceTable&, const RecurrenceTable&) = default;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Gauss nodes (strictly increasing) and positive weights.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Signed logarithmic representation of a real number: value = sign * exp(log_abs).
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
};

/// p_0(x) .. p_n(x) by the forward three-term recurrence. Requires n+1 <= size.
std::vector<double> eval_poly(const RecurrenceTable& table, double x, int n);

/// r_0 .. r_n with r_0 = p_0 and r_j = p_j(x)/p_{j-1}(x), computed without
/// forming p_j. When `check_domain` is set, x must lie strictly outside the
/// zero hull of p_{n-1}; this is verified through the Sturm sign pattern of
/// r_1..r_{n-1} and violations raise DomainError.
std::vector<double> ratio_seq(const RecurrenceTable& table, double x, int n,
                              bool check_domain = true);

/// C_0 .. C_n where C_0 = p_0 and C_j = p_j / sqrt(sum_{k<j} p_k^2).
/// Finite for every real x.
std::vector<double> normalized_seq(const RecurrenceTable& table, double x, int n);

/// p_n(x) recovered from C_0..C_n (n = C.size() - 1) in signed-log form,
/// which stays finite when p_n itself overflows.
SignedLog reconstruct_poly_log(std::span<const double> C);

/// p_n(x) recovered from C_0..C_n; may overflow to +-inf.
double reconstruct_poly(std::span<const double> C);

/// N-point Gauss rule (Golub-Welsch). Requires N <= size - 1.
/// Throws NumericError if the tridiagonal QL iteration fails to converge.
QuadratureRule gauss_rule(const RecurrenceTable& table, int N);

/// Zeros of p_n, increasing.
std::vector<double> poly_zeros(const RecurrenceTable& table, int n);

/// log gamma_n = -1/2 sum_{j=0}^{n} log b_j, gamma_n the leading coefficient of p_n.
double log_leading_coeff(const RecurrenceTable& table, int n);

namespace detail {

/// Eigenvalues (increasing) and squared first eigenvector components of the
/// symmetric tridiagonal matrix with the given diagonal and off-diagonal.
/// `offdiag[i]` couples rows i and i+1; offdiag.size() == diag.size() - 1.
void symmetric_tridiagonal_eigen(std::span<const double> diag,
                                 std::span<const double> offdiag,
                                 std::vector<double>& eigenvalues,
                                 std::vector<double>& first_components_sq);

}  // namespace detail

}  // namespace induced
