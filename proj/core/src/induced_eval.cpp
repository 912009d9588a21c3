#include "induced/induced_eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "distribution_state.hpp"
#include "induced/error.hpp"
#include "induced/modification.hpp"
#include "induced/special_functions.hpp"

namespace induced {

namespace {

std::atomic<std::uint64_t> g_clamp_warnings{0};

// Centers this far from the base support make C_j^2 overflow; the leading
// term of the small-x expansion is exact to working precision there.
constexpr double kFarCenter = 1e120;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double clamp_probability(double v) {
  if (!(v >= -1e-8 && v <= 1.0 + 1e-8)) g_clamp_warnings.fetch_add(1, std::memory_order_relaxed);
  if (std::isnan(v)) throw NumericError("induced distribution evaluated to NaN");
  return std::clamp(v, 0.0, 1.0);
}

// sum_m w_m exp(log_term(u_m)) for the M-point Gauss rule of the working table,
// where the weights come from b_0 = 1.
template <class F>
double gauss_sum(const detail::ModificationWork& w, int M, F&& log_term) {
  const auto m = static_cast<std::size_t>(M);
  std::vector<double> off(m - 1);
  for (std::size_t j = 1; j < m; ++j) off[j - 1] = std::sqrt(w.b[j]);
  std::vector<double> nodes, weights;
  detail::symmetric_tridiagonal_eigen(std::span<const double>(w.a).first(m), off, nodes,
                                      weights);
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) sum += weights[k] * std::exp(log_term(nodes[k]));
  return sum;
}

double log_c_jacobi(double alpha, double beta) {
  return (alpha + beta + 1.0) * std::numbers::ln2 + log_beta(beta + 1.0, alpha + 1.0);
}

double log_c_halffreud(double alpha, double rho) {
  return log_gamma((rho + 1.0) / alpha) - std::log(alpha);
}

double log_p_squared(const RecurrenceTable& table, int n, double x) {
  const auto C = normalized_seq(table, x, n);
  return 2.0 * reconstruct_poly_log(C).log_abs;
}

void require_M(int M) {
  if (M < 1) throw DomainError("quadrature size M must be positive");
}

// F_n(x) for Jacobi(alpha, beta) with x <= x_0, given the zeros and log gamma_n
// of p_n^{(alpha, beta)}.
double jacobi_left(double alpha, double beta, int n, double x, int M,
                   std::span<const double> zeros, double log_gamma, JacobiEvaluation* diag) {
  if (x <= -1.0) return 0.0;
  const double xp1 = x + 1.0;
  const int A = static_cast<int>(std::floor(std::abs(alpha)));
  const double log_const =
      -alpha * std::numbers::ln2 - std::log(beta + 1.0) - log_beta(beta + 1.0, alpha + 1.0);

  const bool far = n > 0 && 2.0 * (zeros.front() + 1.0) / xp1 > kFarCenter;
  if (far) {
    // F_n(x) ~ p_n(-1)^2 (1+x)^{beta+1} 2^alpha / ((beta+1) c_J).
    const auto table = jacobi_table(alpha, beta, n);
    const double lp2 = log_p_squared(table, n, -1.0);
    return std::exp(lp2 + (beta + 1.0) * std::log(xp1) + alpha * std::numbers::ln2 -
                    std::log(beta + 1.0) - log_c_jacobi(alpha, beta));
  }

  const int len = M + A + 2 * n + 1;
  detail::ModificationWork w(jacobi_table(0.0, beta, len - 1));
  for (double z : zeros) w.quadratic(2.0 * (z + 1.0) / xp1 - 1.0);
  const double y = (3.0 - x) / xp1;
  for (int k = 0; k < A; ++k) w.linear(y);
  const double log_half = std::log(xp1 / 2.0);
  w.log_mass += 2.0 * log_gamma + (2.0 * n + A) * log_half;

  const double L = w.log_mass + (beta + 1.0) * log_half + log_const;
  const double e = alpha - A;
  const double value = gauss_sum(w, M, [&](double u) {
    return L + e * std::log(2.0 - 0.5 * (u + 1.0) * xp1);
  });
  if (diag) {
    diag->alpha = alpha;
    diag->beta = beta;
    diag->x = x;
    diag->log_b0 = w.log_mass;
    diag->modified_b.assign(w.b.begin(), w.b.begin() + M + 1);
    diag->error_bound = jacobi_error_bound(alpha, beta, n, M, diag->modified_b, w.log_mass);
  }
  return value;
}

// Left branch for half-line Freud, 0 <= x <= x_0.
double halffreud_left(double alpha, double rho, int n, double x, int M,
                      std::span<const double> zeros, double log_gamma,
                      const RecurrenceTable& table) {
  if (x <= 0.0) return 0.0;
  const double log_half = std::log(x / 2.0);
  const double log_cj = (rho + 1.0) * std::numbers::ln2 - std::log(rho + 1.0);
  const double log_chf = log_c_halffreud(alpha, rho);

  if (n > 0 && 2.0 * zeros.front() / x > kFarCenter) {
    const double lp2 = log_p_squared(table, n, 0.0);
    return std::exp(lp2 + (rho + 1.0) * std::log(x) - std::log(rho + 1.0) - log_chf);
  }

  detail::ModificationWork w(jacobi_table(0.0, rho, M + 2 * n));
  const double per_step = n > 0 ? 2.0 * log_gamma / n : 0.0;
  for (double z : zeros) {
    w.quadratic(2.0 * z / x - 1.0);
    w.log_mass += per_step;
  }
  // p_n(x(1+u)/2)^2 = gamma_n^2 (x/2)^{2n} prod (u - u_j)^2.
  w.log_mass += 2.0 * n * log_half;

  const double L = w.log_mass + (rho + 1.0) * log_half + log_cj - log_chf;
  const double xa = std::pow(x / 2.0, alpha);
  return gauss_sum(w, M, [&](double u) { return L - xa * std::pow(u + 1.0, alpha); });
}

// Complementary branch for half-line Freud, x >= x_0. `base` is HF(alpha, 0)
// with at least M + 2n + 1 entries.
double halffreud_right(double alpha, double rho, int n, double x, int M,
                       std::span<const double> zeros, double log_gamma,
                       const RecurrenceTable& base) {
  const double log_ratio = log_c_halffreud(alpha, 0.0) - log_c_halffreud(alpha, rho);
  detail::ModificationWork w(base.truncated(static_cast<std::size_t>(M + 2 * n + 1)));
  const double per_step = n > 0 ? 2.0 * log_gamma / n : 0.0;
  for (double z : zeros) {
    w.quadratic(z - x);
    w.log_mass += per_step;
  }
  const double L = w.log_mass + log_ratio;
  return gauss_sum(w, M, [&](double u) {
    const double t = u + x;
    return L + rho * std::log(t) + std::pow(u, alpha) - std::pow(t, alpha);
  });
}

RecurrenceTable halffreud_table(double alpha, double rho, int N,
                                const CoefficientRegistry& registry) {
  return recurrence_table(HalfLineFreud(alpha, rho), N, registry);
}

struct HalfFreudSetup {
  RecurrenceTable table;
  std::vector<double> zeros;
  double log_gamma;
};

HalfFreudSetup halffreud_setup(double alpha, double rho, int n,
                               const CoefficientRegistry& registry) {
  HalfFreudSetup s{halffreud_table(alpha, rho, n, registry), {}, 0.0};
  s.zeros = poly_zeros(s.table, n);
  s.log_gamma = log_leading_coeff(s.table, n);
  return s;
}

}  // namespace

std::uint64_t clamp_warning_count() { return g_clamp_warnings.load(); }

std::pair<double, double> halffreud_bulk_interval(double alpha, double rho, int n) {
  const double scale = std::exp(
      (0.5 * std::log(std::numbers::pi) + log_gamma(alpha) - std::numbers::ln2 -
       log_gamma(alpha + 0.5)) /
      alpha);
  const double nn = n;
  const double root = 2.0 * std::sqrt(nn * nn + nn * rho);
  const double lo = std::max(rho + 2.0 * nn - root, 0.0);
  const double hi = rho + 2.0 * nn + root;
  return {scale * std::pow(lo, 1.0 / alpha), scale * std::pow(hi, 1.0 / alpha)};
}

double approx_median(const MeasureSpec& spec, int n) {
  if (n < 0) throw DomainError("approx_median: negative order");
  return std::visit(
      overloaded{
          [&](const Jacobi& m) {
            if (n == 0) return 0.0;
            const double s = 2.0 * n + m.alpha + m.beta;
            return (m.beta * m.beta - m.alpha * m.alpha) / (s * s);
          },
          [&](const HalfLineFreud& m) {
            if (m.alpha == 1.0) return 50.0;
            const auto [lo, hi] = halffreud_bulk_interval(m.alpha, m.rho, n);
            return 0.5 * (lo + hi);
          },
          [&](const Freud&) { return 0.0; },
          [&](const Custom& m) {
            if (n == 0) return m.table.a(0);
            const auto z = poly_zeros(m.table, n);
            return 0.5 * (z.front() + z.back());
          }},
      spec);
}

int default_quadrature_size(const MeasureSpec& spec, int n) {
  return std::visit(overloaded{[&](const Jacobi&) { return 10; },
                               [&](const HalfLineFreud& m) { return m.alpha == 1.0 ? 25 : n + 10; },
                               [&](const Freud& m) {
                                 const int half = n / 2;
                                 return m.alpha == 2.0 ? 25 : half + 10;
                               },
                               [&](const Custom&) { return 10; }},
                    spec);
}

double jacobi_error_bound(double alpha, double beta, int n, int M,
                          std::span<const double> modified_b, double log_b0_scale) {
  Jacobi check(alpha, beta);
  require_M(M);
  if (modified_b.size() < static_cast<std::size_t>(M) + 1) {
    throw InsufficientCoefficients("jacobi_error_bound: needs b_0 .. b_M");
  }
  const int A = static_cast<int>(std::floor(std::abs(alpha)));
  const double x0 = approx_median(Jacobi(alpha, beta), n);
  double log_bound = (beta + 1.0 - A) * std::numbers::ln2 - std::log(beta + 1.0) -
                     log_beta(beta + 1.0, alpha + 1.0) +
                     (2.0 * M + beta + 1.0) * std::log((x0 + 1.0) / 4.0) + log_b0_scale;
  for (int j = 0; j <= M; ++j) log_bound += std::log(modified_b[static_cast<std::size_t>(j)]);
  return std::exp(log_bound);
}

JacobiEvaluation idist_jacobi_detailed(double alpha, double beta, int n, double x, int M) {
  Jacobi check(alpha, beta);
  require_M(M);
  if (n < 0) throw DomainError("idist_jacobi: negative order");
  if (!(x >= -1.0 && x <= 1.0)) {
    throw DomainError("idist_jacobi: x = " + std::to_string(x) + " outside [-1, 1]");
  }
  const auto table = jacobi_table(alpha, beta, n);
  auto zeros = poly_zeros(table, n);
  const double lg = log_leading_coeff(table, n);
  const double x0 = approx_median(Jacobi(alpha, beta), n);

  JacobiEvaluation out;
  if (x > x0) {
    std::vector<double> mirrored(zeros.rbegin(), zeros.rend());
    for (double& z : mirrored) z = -z;
    out.complemented = true;
    out.value = 1.0 - jacobi_left(beta, alpha, n, -x, M, mirrored, lg, &out);
  } else {
    out.value = jacobi_left(alpha, beta, n, x, M, zeros, lg, &out);
  }
  return out;
}

double idist_jacobi(double alpha, double beta, int n, double x, int M) {
  return idist_jacobi_detailed(alpha, beta, n, x, M).value;
}

double idist_halffreud(double alpha, double rho, int n, double x, std::optional<int> M,
                       const CoefficientRegistry& registry) {
  HalfLineFreud check(alpha, rho);
  if (!(x >= 0.0)) throw DomainError("idist_halffreud: x must be nonnegative");
  const int m = M.value_or(default_quadrature_size(check, n));
  require_M(m);
  const auto s = halffreud_setup(alpha, rho, n, registry);
  return halffreud_left(alpha, rho, n, x, m, s.zeros, s.log_gamma, s.table);
}

double idist_halffreud_comp(double alpha, double rho, int n, double x, std::optional<int> M,
                            const CoefficientRegistry& registry) {
  HalfLineFreud check(alpha, rho);
  if (!(x >= 0.0)) throw DomainError("idist_halffreud_comp: x must be nonnegative");
  const int m = M.value_or(default_quadrature_size(check, n));
  require_M(m);
  const auto s = halffreud_setup(alpha, rho, n, registry);
  const auto base = halffreud_table(alpha, 0.0, m + 2 * n, registry);
  return halffreud_right(alpha, rho, n, x, m, s.zeros, s.log_gamma, base);
}

double idist_freud(double alpha, double rho, int n, double x, std::optional<int> M,
                   const CoefficientRegistry& registry) {
  return InducedDistribution(Freud(alpha, rho), n, M, registry).cdf(x);
}

InducedDistribution::InducedDistribution(MeasureSpec spec, int n, std::optional<int> M,
                                         const CoefficientRegistry& registry) {
  if (n < 0) throw DomainError("InducedDistribution: negative order");
  auto s = std::make_shared<State>(std::move(spec));
  s->n = n;
  s->M = M.value_or(default_quadrature_size(s->spec, n));
  require_M(s->M);
  s->support = induced::support(s->spec);
  s->registry = registry;

  std::visit(
      overloaded{
          [&](const Freud& m) {
            const bool even = n % 2 == 0;
            const HalfLineFreud h(m.alpha / 2.0, even ? (m.rho - 1.0) / 2.0 : (m.rho + 1.0) / 2.0);
            s->half = std::make_shared<const InducedDistribution>(h, even ? n / 2 : (n - 1) / 2,
                                                                  M, registry);
            s->table = recurrence_table(s->spec, n, registry);
          },
          [&](const HalfLineFreud& m) {
            s->table = recurrence_table(s->spec, n, registry);
            s->right_base = halffreud_table(m.alpha, 0.0, s->M + 2 * n, registry);
          },
          [&](const auto&) { s->table = recurrence_table(s->spec, n, registry); }},
      s->spec);

  s->zeros = poly_zeros(s->table, n);
  s->log_gamma = induced::log_leading_coeff(s->table, n);
  s->x0 = approx_median(s->spec, n);
  s->ms_N = std::max(10, std::min(2 * n + 10, 200));
  state_ = std::move(s);
}

const MeasureSpec& InducedDistribution::spec() const { return state_->spec; }
int InducedDistribution::order() const { return state_->n; }
Support InducedDistribution::support() const { return state_->support; }
std::span<const double> InducedDistribution::zeros() const { return state_->zeros; }
double InducedDistribution::log_leading_coeff() const { return state_->log_gamma; }
double InducedDistribution::median_guess() const { return state_->x0; }
int InducedDistribution::quadrature_size() const { return state_->M; }
const CoefficientRegistry& InducedDistribution::registry() const { return state_->registry; }

double InducedDistribution::cdf(double x) const {
  const State& s = *state_;
  if (std::isnan(x)) throw DomainError("idist: x is NaN");
  if (x < s.support.lower || x > s.support.upper) {
    throw DomainError("idist: x = " + std::to_string(x) + " outside the support of " +
                      describe(s.spec));
  }
  if (x == s.support.lower) return 0.0;
  if (x == s.support.upper) return 1.0;

  const double raw = std::visit(
      overloaded{
          [&](const Jacobi& m) {
            if (x <= s.x0) return jacobi_left(m.alpha, m.beta, s.n, x, s.M, s.zeros, s.log_gamma, nullptr);
            std::vector<double> mirrored(s.zeros.rbegin(), s.zeros.rend());
            for (double& z : mirrored) z = -z;
            return 1.0 - jacobi_left(m.beta, m.alpha, s.n, -x, s.M, mirrored, s.log_gamma, nullptr);
          },
          [&](const HalfLineFreud& m) {
            if (x <= s.x0) {
              return halffreud_left(m.alpha, m.rho, s.n, x, s.M, s.zeros, s.log_gamma, s.table);
            }
            return 1.0 - halffreud_right(m.alpha, m.rho, s.n, x, s.M, s.zeros, s.log_gamma,
                                         s.right_base);
          },
          [&](const Freud&) {
            // F_n(x) = F^c(x^2)/2 on the half line for x <= 0; even integrand otherwise.
            const InducedDistribution& h = *s.half;
            const double t = x * x;
            const auto& hs = *h.state_;
            const auto& hm = std::get<HalfLineFreud>(hs.spec);
            double comp = 0.0;
            if (t <= hs.x0) {
              comp = 1.0 - halffreud_left(hm.alpha, hm.rho, hs.n, t, hs.M, hs.zeros,
                                          hs.log_gamma, hs.table);
            } else {
              comp = halffreud_right(hm.alpha, hm.rho, hs.n, t, hs.M, hs.zeros, hs.log_gamma,
                                     hs.right_base);
            }
            comp = std::clamp(comp, 0.0, 1.0);
            return x <= 0.0 ? 0.5 * comp : 1.0 - 0.5 * comp;
          },
          [&](const Custom&) -> double {
            throw UnsupportedMeasure(
                "idist: custom coefficient tables carry no density; register the table for "
                "half-line Freud or Freud parameters instead");
          }},
      s.spec);
  return clamp_probability(raw);
}

double idist(const InducedDistribution& dist, double x) { return dist.cdf(x); }

}  // namespace induced
