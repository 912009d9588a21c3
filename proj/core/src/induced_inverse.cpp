#include "induced/induced_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "distribution_state.hpp"
#include "induced/error.hpp"
#include "induced/modification.hpp"

namespace induced {

namespace {

RecurrenceTable induced_table_from(const RecurrenceTable& base, std::span<const double> zeros,
                                   double log_gamma, int N) {
  const std::size_t need = static_cast<std::size_t>(N) + 2 * zeros.size() + 1;
  if (base.size() < need) {
    throw InsufficientCoefficients("induced_recurrence: needs " + std::to_string(need) +
                                   " base coefficients, have " + std::to_string(base.size()));
  }
  detail::ModificationWork w(base.truncated(need));
  for (double z : zeros) w.quadratic(z);
  w.log_mass += 2.0 * log_gamma;
  return w.table();
}

// Largest usable N for the distribution's measure, capped at `wanted`.
int available_rule_size(const InducedDistribution::State& s, int wanted) {
  if (const auto* c = std::get_if<Custom>(&s.spec)) {
    const int avail = static_cast<int>(c->table.size()) - 2 * s.n - 1;
    return std::min(wanted, avail);
  }
  if (const auto* h = std::get_if<HalfLineFreud>(&s.spec); h && h->alpha != 1.0) {
    const auto t = s.registry.lookup(*h);
    return t ? std::min(wanted, static_cast<int>(t->size()) - 2 * s.n - 1) : wanted;
  }
  if (const auto* f = std::get_if<Freud>(&s.spec); f && f->alpha != 2.0) {
    const auto t = s.registry.lookup(*f);
    return t ? std::min(wanted, static_cast<int>(t->size()) - 2 * s.n - 1) : wanted;
  }
  return wanted;
}

}  // namespace

RecurrenceTable induced_recurrence(const MeasureSpec& spec, int n, int N,
                                   const CoefficientRegistry& registry) {
  if (n < 0 || N < 0) throw DomainError("induced_recurrence: n and N must be nonnegative");
  const auto base = recurrence_table(spec, N + 2 * n, registry);
  if (n == 0) return base;
  const auto zeros = poly_zeros(base, n);
  return induced_table_from(base, zeros, log_leading_coeff(base, n), N);
}

RecurrenceTable InducedDistribution::induced_table(int N) const {
  const State& s = *state_;
  if (N < 0) throw DomainError("induced_table: N must be nonnegative");
  const auto base = recurrence_table(s.spec, N + 2 * s.n, s.registry);
  if (s.n == 0) return base;
  return induced_table_from(base, s.zeros, s.log_gamma, N);
}

int InducedDistribution::induced_rule_size() const {
  return available_rule_size(*state_, state_->ms_N);
}

const QuadratureRule& InducedDistribution::induced_rule() const {
  const State& s = *state_;
  std::call_once(s.ms_once, [&] {
    const int N = available_rule_size(s, s.ms_N);
    if (N < 2) {
      throw InsufficientCoefficients("induced_rule: coefficient table too short for order " +
                                     std::to_string(s.n));
    }
    s.ms_rule = gauss_rule(induced_table(N), N);
  });
  return s.ms_rule;
}

std::pair<double, double> markov_stiltjies_interval(double u, const InducedDistribution& dist,
                                                    int N) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("markov_stiltjies_interval: u outside [0, 1]");
  if (N == 1 || N < 0) throw DomainError("markov_stiltjies_interval: N must be at least 2");
  QuadratureRule local;
  const QuadratureRule* rule = nullptr;
  if (N == 0) {
    rule = &dist.induced_rule();
  } else {
    local = gauss_rule(dist.induced_table(N), N);
    rule = &local;
  }
  const std::size_t count = rule->size();
  const Support sup = dist.support();

  // First m (1-based) with S_m >= u; rounding in the weight sum may leave
  // S_N slightly below 1, in which case m = N.
  std::size_t m = count;
  double partial = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    partial += rule->weights[k];
    if (partial >= u) {
      m = k + 1;
      break;
    }
  }
  auto z = [&](std::size_t j) {
    if (j == 0) return sup.lower;
    if (j == count + 1) return sup.upper;
    return rule->nodes[j - 1];
  };
  return {z(m - 1), z(m + 1)};
}

double idist_inverse(double u, const InducedDistribution& dist, double tol) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("idist_inverse: u outside [0, 1]");
  if (!(tol > 0.0)) throw DomainError("idist_inverse: tol must be positive");
  const Support sup = dist.support();
  if (u == 0.0) return sup.lower;
  if (u == 1.0) return sup.upper;

  auto [lo, hi] = markov_stiltjies_interval(u, dist);

  // Step outward from the nearest finite node when a bracket end is infinite.
  if (!std::isfinite(lo)) {
    const double anchor = std::isfinite(hi) ? hi : 0.0;
    double step = 1.0;
    lo = anchor - step;
    while (dist.cdf(lo) > u) {
      hi = lo;
      step *= 2.0;
      lo = anchor - step;
      if (!std::isfinite(lo)) throw NumericError("idist_inverse: lower step-out diverged");
    }
  }
  if (!std::isfinite(hi)) {
    const double anchor = lo;
    double step = 1.0;
    hi = anchor + step;
    while (dist.cdf(hi) < u) {
      lo = hi;
      step *= 2.0;
      hi = anchor + step;
      if (!std::isfinite(hi)) throw NumericError("idist_inverse: upper step-out diverged");
    }
  }

  for (;;) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) return mid;
    const double f = dist.cdf(mid);
    if (std::abs(f - u) <= tol) return mid;
    if (f < u) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol * std::max(1.0, std::abs(lo) + std::abs(hi))) return lo + 0.5 * (hi - lo);
  }
}

}  // namespace induced
