#include "induced/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "induced/error.hpp"

namespace induced::oracle {

namespace {

constexpr double kTMax = 6.5;
constexpr int kMaxLevel = 12;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// log |p_n(x)| by the plain three-term recurrence with periodic rescaling.
double log_abs_poly(const RecurrenceTable& t, const std::vector<double>& sqrt_b, int n,
                    double x) {
  double prev = 0.0;
  double cur = 1.0 / sqrt_b[0];
  double log_scale = 0.0;
  // Keep |cur| small enough that (x - a) * cur cannot overflow at far nodes.
  const double limit = 1e150 / std::max(1.0, std::abs(x));
  for (int j = 0; j < n; ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double next = ((x - t.a(k)) * cur - sqrt_b[k] * prev) / sqrt_b[k + 1];
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > limit) {
      cur /= mag;
      prev /= mag;
      log_scale += std::log(mag);
    } else if (mag < 1e-150 && mag > 0.0 && std::abs(prev) < 1e-150) {
      cur *= 1e150;
      prev *= 1e150;
      log_scale -= 150.0 * std::numbers::ln10;
    }
  }
  return std::log(std::abs(cur)) + log_scale;
}

}  // namespace

OracleDistribution::OracleDistribution(MeasureSpec spec, int n,
                                       const CoefficientRegistry& registry)
    : spec_(std::move(spec)), n_(n) {
  if (n < 0) throw DomainError("OracleDistribution: negative order");
  if (std::holds_alternative<Custom>(spec_)) {
    throw UnsupportedMeasure("OracleDistribution: custom tables have no density");
  }
  table_ = recurrence_table(spec_, n, registry);
  for (double b : table_.b()) sqrt_b_.push_back(std::sqrt(b));
  log_c_ = normalization_constant(spec_).log_value;
  target_ = n > 200 ? 1e-9 : 1e-12;

  const Support sup = support(spec_);
  std::vector<double> cuts{sup.lower};
  for (double z : poly_zeros(table_, n)) cuts.push_back(z);
  if (std::holds_alternative<Freud>(spec_)) cuts.push_back(0.0);
  cuts.push_back(sup.upper);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    panels_.push_back({cuts[k], cuts[k + 1], integrate(cuts[k], cuts[k + 1])});
  }
  prefix_.assign(panels_.size(), 0.0);
  suffix_.assign(panels_.size(), 0.0);
  for (std::size_t k = 1; k < panels_.size(); ++k) {
    prefix_[k] = prefix_[k - 1] + panels_[k - 1].integral;
  }
  for (std::size_t k = panels_.size() - 1; k-- > 0;) {
    suffix_[k] = suffix_[k + 1] + panels_[k + 1].integral;
  }
}

double OracleDistribution::log_density(double x, double d_lower, double d_upper) const {
  const double lp2 = 2.0 * log_abs_poly(table_, sqrt_b_, n_, x);
  const double lw = std::visit(
      overloaded{[&](const Jacobi& m) {
                   return m.alpha * std::log(d_upper) + m.beta * std::log(d_lower);
                 },
                 [&](const HalfLineFreud& m) {
                   return m.rho * std::log(d_lower) - std::pow(d_lower, m.alpha);
                 },
                 [&](const Freud& m) {
                   const double ax = std::abs(x);
                   return m.rho * std::log(ax) - std::pow(ax, m.alpha);
                 },
                 [&](const Custom&) -> double { return std::nan(""); }},
      spec_);
  return lp2 + lw - log_c_;
}

double OracleDistribution::density(double x) const {
  const Support sup = support(spec_);
  if (x <= sup.lower || x >= sup.upper) return 0.0;
  return std::exp(log_density(x, x - sup.lower, sup.upper - x));
}

double OracleDistribution::integrate(double lo, double hi) const {
  if (!(hi > lo)) return 0.0;
  const Support sup = support(spec_);
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) throw DomainError("oracle: doubly infinite panel");

  // Node at parameter t: returns log(weight * integrand), or -inf.
  auto log_term = [&](double t) {
    const double s = std::numbers::pi / 2.0 * std::sinh(t);
    const double dsdt = std::numbers::pi / 2.0 * std::cosh(t);
    double x, dl, dr, log_jac;
    if (!lo_inf && !hi_inf) {
      const double h = 0.5 * (hi - lo);
      dl = 2.0 * h / (1.0 + std::exp(-2.0 * s));
      dr = 2.0 * h / (1.0 + std::exp(2.0 * s));
      x = t < 0.0 ? lo + dl : hi - dr;
      const double as = std::abs(s);
      log_jac = std::log(h * dsdt) + std::log(4.0) - 2.0 * as - 2.0 * std::log1p(std::exp(-2.0 * as));
    } else if (!lo_inf) {
      dl = std::exp(s);
      x = lo + dl;
      dr = kInf;
      log_jac = std::log(dsdt) + s;
    } else {
      dr = std::exp(s);
      x = hi - dr;
      dl = kInf;
      log_jac = std::log(dsdt) + s;
    }
    if (!std::isfinite(x) || dl == 0.0 || dr == 0.0) return -kInf;
    const double d_lower = lo == sup.lower ? dl : x - sup.lower;
    const double d_upper = hi == sup.upper ? dr : sup.upper - x;
    if (!(d_lower > 0.0) || !(d_upper > 0.0)) return -kInf;
    const double v = log_jac + log_density(x, d_lower, d_upper);
    return std::isnan(v) ? -kInf : v;
  };
  auto term = [&](double t) {
    const double v = log_term(t);
    return v < -745.0 ? 0.0 : std::exp(v);
  };

  double sum = term(0.0);
  for (int j = 1; j <= static_cast<int>(kTMax); ++j) sum += term(j) + term(-j);
  double h = 1.0;
  double prev = h * sum;
  double diff = kInf;
  for (int level = 1; level <= kMaxLevel; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h) sum += term(t) + term(-t);
    const double cur = h * sum;
    diff = std::abs(cur - prev);
    prev = cur;
    if (level >= 3 && diff <= 1e-14 * std::abs(cur)) return cur;
  }
  if (diff > 1e-2 * target_ && diff > 1e-13 * std::abs(prev)) {
    throw OracleAccuracyError("oracle: panel [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "] did not converge (level difference " +
                              std::to_string(diff) + ")");
  }
  return prev;
}

double OracleDistribution::total_mass() const {
  double s = 0.0;
  for (const auto& p : panels_) s += p.integral;
  return s;
}

double OracleDistribution::cdf(double x) const {
  const Support sup = support(spec_);
  if (x <= sup.lower) return 0.0;
  if (x >= sup.upper) return 1.0;
  const auto it = std::upper_bound(panels_.begin(), panels_.end(), x,
                                   [](double v, const Panel& p) { return v < p.hi; });
  const auto k = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
      it - panels_.begin(), static_cast<std::ptrdiff_t>(panels_.size()) - 1));
  const Panel& p = panels_[k];
  if (prefix_[k] <= 0.5) return prefix_[k] + integrate(p.lo, x);
  return 1.0 - suffix_[k] - integrate(x, p.hi);
}

double oracle_idist(const MeasureSpec& spec, int n, double x) {
  return OracleDistribution(spec, n).cdf(x);
}

RecurrenceTable oracle_stieltjes(const MeasureSpec& base, std::span<const PolyFactor> factors,
                                 int N, const CoefficientRegistry& registry) {
  if (N < 0) throw DomainError("oracle_stieltjes: negative N");
  int degree = 0;
  for (const auto& f : factors) {
    if (f.power < 0) throw DomainError("oracle_stieltjes: negative factor power");
    degree += f.power;
  }
  const int K = 4 * N + degree + 20;
  const auto rule = gauss_rule(recurrence_table(base, K, registry), K);
  const auto Ku = static_cast<std::size_t>(K);

  std::vector<double> w(Ku);
  for (std::size_t k = 0; k < Ku; ++k) {
    double v = rule.weights[k];
    for (const auto& f : factors) v *= std::pow(rule.nodes[k] - f.center, f.power);
    w[k] = v;
  }

  const auto len = static_cast<std::size_t>(N) + 1;
  std::vector<double> a(len), b(len);
  std::vector<double> prev(Ku, 0.0), cur(Ku, 1.0), next(Ku);
  double norm_prev = 1.0;
  for (std::size_t j = 0; j < len; ++j) {
    double norm = 0.0, xnorm = 0.0;
    for (std::size_t k = 0; k < Ku; ++k) {
      const double c2 = w[k] * cur[k] * cur[k];
      norm += c2;
      xnorm += c2 * rule.nodes[k];
    }
    a[j] = xnorm / norm;
    b[j] = j == 0 ? std::abs(norm) : norm / norm_prev;
    if (!(b[j] > 0.0) || !std::isfinite(b[j]) || !std::isfinite(a[j])) {
      throw OracleAccuracyError("oracle_stieltjes: lost positivity at index " +
                                std::to_string(j));
    }
    const double bj = j == 0 ? 0.0 : b[j];
    for (std::size_t k = 0; k < Ku; ++k) {
      next[k] = (rule.nodes[k] - a[j]) * cur[k] - bj * prev[k];
    }
    std::swap(prev, cur);
    std::swap(cur, next);
    norm_prev = norm;
  }
  return RecurrenceTable(std::move(a), std::move(b));
}

double oracle_dense_specnorm(std::span<const double> matrix, std::size_t n) {
  if (matrix.size() != n * n) throw DomainError("oracle_dense_specnorm: size mismatch");
  if (n == 0) return 0.0;
  std::vector<double> A(matrix.begin(), matrix.end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return A[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(at(i, i)));
  return norm;
}

}  // namespace induced::oracle
