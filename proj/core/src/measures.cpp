#include "induced/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "induced/error.hpp"
#include "induced/special_functions.hpp"

namespace induced {

namespace {

constexpr double kParamMatchTol = 1e-12;

bool same(double x, double y) { return std::abs(x - y) <= kParamMatchTol * (1.0 + std::abs(x)); }

std::string params(double p, double q) {
  std::ostringstream os;
  os.precision(17);
  os << p << ", " << q;
  return os.str();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_count(int N, const char* what) {
  if (N < 0) throw DomainError(std::string(what) + ": N must be nonnegative");
}

}  // namespace

Jacobi::Jacobi(double a, double b) : alpha(a), beta(b) {
  if (!(alpha > -1.0) || !(beta > -1.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("Jacobi measure requires alpha, beta > -1 (got " + params(a, b) + ")");
  }
}

HalfLineFreud::HalfLineFreud(double a, double r) : alpha(a), rho(r) {
  if (!(alpha > 0.5) || !(rho > -1.0) || !std::isfinite(alpha) || !std::isfinite(rho)) {
    throw DomainError("half-line Freud measure requires alpha > 1/2, rho > -1 (got " +
                      params(a, r) + ")");
  }
}

Freud::Freud(double a, double r) : alpha(a), rho(r) {
  if (!(alpha > 1.0) || !(rho > -1.0) || !std::isfinite(alpha) || !std::isfinite(rho)) {
    throw DomainError("Freud measure requires alpha > 1, rho > -1 (got " + params(a, r) +
                      ")");
  }
}

bool Support::bounded() const { return std::isfinite(lower) && std::isfinite(upper); }

Custom::Custom(Support s, RecurrenceTable t) : support(s), table(std::move(t)) {
  if (!(support.lower < support.upper)) {
    throw DomainError("custom measure support must satisfy lower < upper");
  }
  if (table.empty()) throw InsufficientCoefficients("custom measure needs a nonempty table");
}

std::string describe(const MeasureSpec& spec) {
  return std::visit(
      overloaded{
          [](const Jacobi& m) { return "Jacobi(" + params(m.alpha, m.beta) + ")"; },
          [](const HalfLineFreud& m) {
            return "HalfLineFreud(" + params(m.alpha, m.rho) + ")";
          },
          [](const Freud& m) { return "Freud(" + params(m.alpha, m.rho) + ")"; },
          [](const Custom& m) {
            return "Custom(" + params(m.support.lower, m.support.upper) + ", " +
                   std::to_string(m.table.size()) + " coefficients)";
          }},
      spec);
}

NormalizationConstant normalization_constant(const MeasureSpec& spec) {
  const double log_value = std::visit(
      overloaded{
          [](const Jacobi& m) {
            return (m.alpha + m.beta + 1.0) * std::numbers::ln2 +
                   log_beta(m.beta + 1.0, m.alpha + 1.0);
          },
          [](const HalfLineFreud& m) {
            return log_gamma((m.rho + 1.0) / m.alpha) - std::log(m.alpha);
          },
          [](const Freud& m) {
            return std::numbers::ln2 + log_gamma((m.rho + 1.0) / m.alpha) - std::log(m.alpha);
          },
          [](const Custom&) -> double {
            throw UnsupportedMeasure(
                "normalization_constant: custom measures carry no density");
          }},
      spec);
  return {log_value, std::exp(log_value)};
}

Support support(const MeasureSpec& spec) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{[](const Jacobi&) { return Support{-1.0, 1.0}; },
                               [](const HalfLineFreud&) { return Support{0.0, inf}; },
                               [](const Freud&) { return Support{-inf, inf}; },
                               [](const Custom& m) { return m.support; }},
                    spec);
}

double h_squared(double alpha, double rho) {
  return std::exp(log_gamma((rho + 1.0) / alpha) - log_gamma((rho + 3.0) / alpha));
}

HalfLinePair halfline_from_freud(const RecurrenceTable& freud) {
  for (double a : freud.a()) {
    if (a != 0.0) throw DomainError("halfline_from_freud: input table is not even (a_j != 0)");
  }
  const std::size_t L = freud.size();
  if (L < 2) throw InsufficientCoefficients("halfline_from_freud: need at least 2 coefficients");
  const auto b = freud.b();

  const std::size_t n_star = L / 2;
  std::vector<double> as(n_star), bs(n_star);
  as[0] = b[1];
  bs[0] = b[0];
  for (std::size_t n = 1; n < n_star; ++n) {
    as[n] = b[2 * n] + b[2 * n + 1];
    bs[n] = b[2 * n] * b[2 * n - 1];
  }

  // Odd polynomials: x p_{**,n}(x^2) sits at degree 2n+1.
  const std::size_t n_ss = (L - 1) / 2;
  std::vector<double> ass(n_ss), bss(n_ss);
  for (std::size_t n = 0; n < n_ss; ++n) {
    ass[n] = b[2 * n + 1] + b[2 * n + 2];
    bss[n] = n == 0 ? b[0] : b[2 * n] * b[2 * n + 1];
  }
  if (n_ss == 0) {
    return {RecurrenceTable(std::move(as), std::move(bs)), RecurrenceTable{}};
  }
  return {RecurrenceTable(std::move(as), std::move(bs)),
          RecurrenceTable(std::move(ass), std::move(bss))};
}

RecurrenceTable freud_from_halfline(const RecurrenceTable& star) {
  if (star.empty()) throw InsufficientCoefficients("freud_from_halfline: empty table");
  const std::size_t K = star.size();
  std::vector<double> b(2 * K);
  b[0] = star.b(0);
  b[1] = star.a(0);
  for (std::size_t n = 1; n < K; ++n) {
    b[2 * n] = star.b(n) / b[2 * n - 1];
    b[2 * n + 1] = star.a(n) - b[2 * n];
  }
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!(b[j] > 0.0) || !std::isfinite(b[j])) {
      throw InconsistentCoefficients("freud_from_halfline: induced b_" + std::to_string(j) +
                                     " = " + std::to_string(b[j]) +
                                     " is not positive; input is not a half-line image of "
                                     "an even weight");
    }
  }
  std::vector<double> a(b.size(), 0.0);
  return RecurrenceTable(std::move(a), std::move(b));
}

RecurrenceTable jacobi_table(double alpha, double beta, int N) {
  require_count(N, "jacobi_table");
  Jacobi check(alpha, beta);
  const auto len = static_cast<std::size_t>(N) + 1;
  std::vector<double> a(len), b(len);
  const double ab = alpha + beta;
  for (std::size_t k = 0; k < len; ++k) {
    const double n = static_cast<double>(k);
    const double s = 2.0 * n + ab;
    if (k == 0) {
      a[k] = (beta - alpha) / (ab + 2.0);
      b[k] = 1.0;
    } else {
      a[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
      if (k == 1) {
        // Removable singularity of the general form at alpha + beta + 1 = 0.
        b[k] = 4.0 * (alpha + 1.0) * (beta + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
      } else {
        b[k] = 4.0 * n * (n + alpha) * (n + beta) * (n + ab) /
               (s * s * (s + 1.0) * (s - 1.0));
      }
    }
  }
  return RecurrenceTable(std::move(a), std::move(b));
}

RecurrenceTable laguerre_table(double rho, int N) {
  require_count(N, "laguerre_table");
  HalfLineFreud check(1.0, rho);
  const auto len = static_cast<std::size_t>(N) + 1;
  std::vector<double> a(len), b(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double n = static_cast<double>(k);
    a[k] = 2.0 * n + rho + 1.0;
    b[k] = k == 0 ? 1.0 : n * (n + rho);
  }
  return RecurrenceTable(std::move(a), std::move(b));
}

RecurrenceTable hermite_table(double rho, int N) {
  require_count(N, "hermite_table");
  Freud check(2.0, rho);
  // Even part: Laguerre with rho_* = (rho - 1)/2; K+1 pairs give 2K+2 entries.
  const int K = (N + 1) / 2;
  return freud_from_halfline(laguerre_table((rho - 1.0) / 2.0, K))
      .truncated(static_cast<std::size_t>(N) + 1);
}

void CoefficientRegistry::add(const HalfLineFreud& measure, RecurrenceTable table) {
  halfline_.emplace_back(measure, std::move(table));
}

void CoefficientRegistry::add(const Freud& measure, RecurrenceTable table) {
  freud_.emplace_back(measure, std::move(table));
}

std::optional<RecurrenceTable> CoefficientRegistry::lookup(const HalfLineFreud& m) const {
  std::optional<RecurrenceTable> best;
  auto offer = [&](RecurrenceTable t) {
    if (!t.empty() && (!best || t.size() > best->size())) best = std::move(t);
  };
  for (const auto& [key, table] : halfline_) {
    if (same(key.alpha, m.alpha) && same(key.rho, m.rho)) offer(table);
  }
  for (const auto& [key, table] : freud_) {
    if (!same(key.alpha, 2.0 * m.alpha)) continue;
    if (same(key.rho, 2.0 * m.rho + 1.0)) offer(halfline_from_freud(table).star);
    if (same(key.rho, 2.0 * m.rho - 1.0)) offer(halfline_from_freud(table).starstar);
  }
  return best;
}

std::optional<RecurrenceTable> CoefficientRegistry::lookup(const Freud& m) const {
  std::optional<RecurrenceTable> best;
  auto offer = [&](RecurrenceTable t) {
    if (!t.empty() && (!best || t.size() > best->size())) best = std::move(t);
  };
  for (const auto& [key, table] : freud_) {
    if (same(key.alpha, m.alpha) && same(key.rho, m.rho)) offer(table);
  }
  for (const auto& [key, table] : halfline_) {
    if (same(2.0 * key.alpha, m.alpha) && same(2.0 * key.rho + 1.0, m.rho)) {
      offer(freud_from_halfline(table));
    }
  }
  return best;
}

namespace {

RecurrenceTable from_registry(std::optional<RecurrenceTable> found, int N,
                              const std::string& name) {
  if (!found) {
    throw UnsupportedMeasure(
        "no recurrence coefficients for " + name +
        ": closed forms exist only for half-line Freud alpha = 1 and Freud alpha = 2; "
        "supply a custom coefficient table (CSV, see `induced coeffs`) for these parameters");
  }
  if (found->size() < static_cast<std::size_t>(N) + 1) {
    throw InsufficientCoefficients("registered table for " + name + " has " +
                                   std::to_string(found->size()) + " coefficients, " +
                                   std::to_string(N + 1) + " required");
  }
  return found->truncated(static_cast<std::size_t>(N) + 1);
}

}  // namespace

RecurrenceTable recurrence_table(const MeasureSpec& spec, int N,
                                 const CoefficientRegistry& registry) {
  require_count(N, "recurrence_table");
  return std::visit(
      overloaded{
          [&](const Jacobi& m) { return jacobi_table(m.alpha, m.beta, N); },
          [&](const HalfLineFreud& m) {
            if (m.alpha == 1.0) return laguerre_table(m.rho, N);
            return from_registry(registry.lookup(m), N, describe(spec));
          },
          [&](const Freud& m) {
            if (m.alpha == 2.0) return hermite_table(m.rho, N);
            return from_registry(registry.lookup(m), N, describe(spec));
          },
          [&](const Custom& m) {
            if (m.table.size() < static_cast<std::size_t>(N) + 1) {
              throw InsufficientCoefficients(
                  "custom table has " + std::to_string(m.table.size()) +
                  " coefficients, " + std::to_string(N + 1) + " required");
            }
            return m.table.truncated(static_cast<std::size_t>(N) + 1);
          }},
      spec);
}

}  // namespace induced
