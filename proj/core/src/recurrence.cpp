#include "induced/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "induced/error.hpp"

namespace induced {

namespace {

void require_length(const RecurrenceTable& table, int needed, const char* what) {
  if (needed < 0) {
    throw DomainError(std::string(what) + ": negative degree");
  }
  if (static_cast<std::size_t>(needed) > table.size()) {
    throw InsufficientCoefficients(std::string(what) + ": needs " +
                                   std::to_string(needed) +
                                   " coefficient pairs, table has " +
                                   std::to_string(table.size()));
  }
}

constexpr int kMaxSweepsPerEigenvalue = 50;
constexpr double kDeflationTol = 1e-15;

}  // namespace

RecurrenceTable::RecurrenceTable(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) {
    throw DomainError("RecurrenceTable: a and b must have equal length");
  }
  for (std::size_t j = 0; j < a_.size(); ++j) {
    if (!std::isfinite(a_[j])) {
      throw DomainError("RecurrenceTable: a_" + std::to_string(j) + " is not finite");
    }
    if (!(b_[j] > 0.0) || !std::isfinite(b_[j])) {
      throw DomainError("RecurrenceTable: b_" + std::to_string(j) +
                        " must be positive and finite");
    }
  }
}

RecurrenceTable RecurrenceTable::truncated(std::size_t length) const {
  if (length > size()) {
    throw InsufficientCoefficients("truncated: table has " + std::to_string(size()) +
                                   " entries, requested " + std::to_string(length));
  }
  RecurrenceTable out;
  out.a_.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(length));
  out.b_.assign(b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(length));
  return out;
}

RecurrenceTable RecurrenceTable::with_mass(double b0) const {
  if (empty()) throw InsufficientCoefficients("with_mass: empty table");
  std::vector<double> b = b_;
  b[0] = b0;
  return RecurrenceTable(a_, std::move(b));
}

double SignedLog::value() const { return sign * std::exp(log_abs); }

std::vector<double> eval_poly(const RecurrenceTable& table, double x, int n) {
  require_length(table, n + 1, "eval_poly");
  std::vector<double> p(static_cast<std::size_t>(n) + 1);
  p[0] = 1.0 / std::sqrt(table.b(0));
  if (n >= 1) p[1] = (x - table.a(0)) * p[0] / std::sqrt(table.b(1));
  for (int j = 1; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    p[k + 1] = ((x - table.a(k)) * p[k] - std::sqrt(table.b(k)) * p[k - 1]) /
               std::sqrt(table.b(k + 1));
  }
  return p;
}

std::vector<double> ratio_seq(const RecurrenceTable& table, double x, int n,
                              bool check_domain) {
  require_length(table, n + 1, "ratio_seq");
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  r[0] = 1.0 / std::sqrt(table.b(0));
  if (n == 0) return r;
  // sqrt(b_j) r_j = x - a_{j-1} - sqrt(b_{j-1}) / r_{j-1}, with p_{-1} = 0 at j = 1.
  r[1] = (x - table.a(0)) / std::sqrt(table.b(1));
  for (int j = 2; j <= n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    r[k] = (x - table.a(k - 1) - std::sqrt(table.b(k - 1)) / r[k - 1]) /
           std::sqrt(table.b(k));
  }
  if (check_domain && n >= 2) {
    // The number of sign changes of p_0..p_{n-1} at x equals the number of
    // zeros of p_{n-1} to the right of x.
    const bool right = r[1] > 0.0;
    for (int j = 1; j < n; ++j) {
      const double v = r[static_cast<std::size_t>(j)];
      if (!std::isfinite(v) || v == 0.0 || (v > 0.0) != right) {
        throw DomainError("ratio_seq: x = " + std::to_string(x) +
                          " is inside the zero hull of p_" + std::to_string(n - 1));
      }
    }
  }
  return r;
}

std::vector<double> normalized_seq(const RecurrenceTable& table, double x, int n) {
  require_length(table, n + 1, "normalized_seq");
  std::vector<double> C(static_cast<std::size_t>(n) + 1);
  C[0] = 1.0 / std::sqrt(table.b(0));
  if (n >= 1) C[1] = (x - table.a(0)) / std::sqrt(table.b(1));
  if (n >= 2) {
    C[2] = ((x - table.a(1)) * C[1] - std::sqrt(table.b(1))) /
           (std::sqrt(table.b(2)) * std::hypot(1.0, C[1]));
  }
  for (int j = 2; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double prev = C[k - 1] / std::hypot(1.0, C[k - 1]);
    C[k + 1] = ((x - table.a(k)) * C[k] - std::sqrt(table.b(k)) * prev) /
               (std::sqrt(table.b(k + 1)) * std::hypot(1.0, C[k]));
  }
  return C;
}

SignedLog reconstruct_poly_log(std::span<const double> C) {
  if (C.empty()) throw DomainError("reconstruct_poly: empty C sequence");
  SignedLog out;
  out.sign = C[0] < 0.0 ? -1 : 1;
  out.log_abs = std::log(std::abs(C[0]));
  const std::size_t n = C.size() - 1;
  if (n == 0) return out;
  if (C[n] == 0.0) {
    out.log_abs = -std::numeric_limits<double>::infinity();
    out.sign = 1;
    return out;
  }
  if (C[n] < 0.0) out.sign = -out.sign;
  out.log_abs += std::log(std::abs(C[n]));
  for (std::size_t j = 1; j < n; ++j) {
    out.log_abs += std::log(std::hypot(1.0, C[j]));
  }
  return out;
}

double reconstruct_poly(std::span<const double> C) {
  return reconstruct_poly_log(C).value();
}

namespace detail {

void symmetric_tridiagonal_eigen(std::span<const double> diag,
                                 std::span<const double> offdiag,
                                 std::vector<double>& eigenvalues,
                                 std::vector<double>& first_components_sq) {
  const std::size_t n = diag.size();
  if (n == 0) {
    eigenvalues.clear();
    first_components_sq.clear();
    return;
  }
  if (offdiag.size() + 1 != n) {
    throw DomainError("symmetric_tridiagonal_eigen: offdiag must have n-1 entries");
  }
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiag.begin(), offdiag.end(), e.begin());
  // First row of the accumulated eigenvector matrix.
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  // Implicit-shift QL (tql2) restricted to the first eigenvector row.
  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kDeflationTol * dd) break;
      }
      if (m == l) break;
      if (++iterations > kMaxSweepsPerEigenvalue) {
        throw NumericError("gauss_rule: QL iteration failed to converge for eigenvalue " +
                           std::to_string(l) + " of " + std::to_string(n) + " after " +
                           std::to_string(kMaxSweepsPerEigenvalue) + " sweeps (|e| = " +
                           std::to_string(std::abs(e[l])) + ")");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? r : -r));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      std::size_t i = m;
      while (i-- > l) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  eigenvalues.resize(n);
  first_components_sq.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    eigenvalues[k] = d[order[k]];
    first_components_sq[k] = z[order[k]] * z[order[k]];
  }
}

}  // namespace detail

QuadratureRule gauss_rule(const RecurrenceTable& table, int N) {
  if (N < 1) throw DomainError("gauss_rule: N must be positive");
  require_length(table, N + 1, "gauss_rule");
  const auto n = static_cast<std::size_t>(N);
  std::vector<double> off(n - 1);
  for (std::size_t j = 1; j < n; ++j) off[j - 1] = std::sqrt(table.b(j));
  QuadratureRule rule;
  detail::symmetric_tridiagonal_eigen(table.a().first(n), off, rule.nodes, rule.weights);
  const double mass = table.b(0);
  for (double& w : rule.weights) w *= mass;
  return rule;
}

std::vector<double> poly_zeros(const RecurrenceTable& table, int n) {
  if (n == 0) return {};
  return gauss_rule(table, n).nodes;
}

double log_leading_coeff(const RecurrenceTable& table, int n) {
  require_length(table, n + 1, "log_leading_coeff");
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) sum += std::log(table.b(static_cast<std::size_t>(j)));
  return -0.5 * sum;
}

}  // namespace induced
