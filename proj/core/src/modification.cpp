#include "induced/modification.hpp"

#include <cmath>
#include <string>

#include "induced/error.hpp"

namespace induced::detail {

ModificationWork::ModificationWork(const RecurrenceTable& table)
    : ModificationWork(table.a(), table.b()) {}

ModificationWork::ModificationWork(std::span<const double> a_in, std::span<const double> b_in)
    : a(a_in.begin(), a_in.end()), b(b_in.begin(), b_in.end()) {
  if (a.empty() || a.size() != b.size()) {
    throw DomainError("modification: malformed table");
  }
  log_mass = std::log(b[0]);
  b[0] = 1.0;
}

void ModificationWork::quadratic(double z0) {
  const std::size_t L = a.size();
  if (L < 3) {
    throw InsufficientCoefficients("quadratic_modification: needs at least 3 coefficients, have " +
                                   std::to_string(L));
  }
  // C_0..C_{L-1} at z0 with b_0 = 1; H_k = sqrt(1 + C_k^2).
  auto& C = scratch;
  auto& H = norm;
  auto& sb = sqrt_b;
  C.resize(L);
  H.resize(L);
  sb.resize(L);
  for (std::size_t k = 0; k < L; ++k) sb[k] = std::sqrt(b[k]);
  auto hyp = [](double c) {
    const double ac = std::abs(c);
    return ac < 1e150 ? std::sqrt(1.0 + c * c) : ac;
  };
  C[0] = 1.0;
  H[0] = std::sqrt(2.0);
  C[1] = (z0 - a[0]) / sb[1];
  H[1] = hyp(C[1]);
  double prev = 1.0;
  for (std::size_t k = 1; k + 1 < L; ++k) {
    C[k + 1] = ((z0 - a[k]) * C[k] - sb[k] * prev) / (sb[k + 1] * H[k]);
    H[k + 1] = hyp(C[k + 1]);
    prev = C[k] / H[k];
  }

  log_mass += std::log((a[0] - z0) * (a[0] - z0) + b[1]);

  const std::size_t out = L - 2;
  // u_n = C_n / sqrt(1 + C_n^2); u_0 = 1 since p_0 > 0.
  double u_n = 1.0;
  for (std::size_t n = 0; n < out; ++n) {
    const double u_next = C[n + 1] / H[n + 1];
    a[n] = a[n + 1] + sb[n + 2] * C[n + 2] * u_next - sb[n + 1] * C[n + 1] * u_n;
    if (n > 0) {
      const double ratio = H[n + 1] / H[n];
      b[n] = b[n + 1] * ratio * ratio;
    }
    u_n = u_next;
  }
  a.resize(out);
  b.resize(out);
  b[0] = 1.0;
}

void ModificationWork::linear(double y0) {
  const std::size_t L = a.size();
  if (L < 2) {
    throw InsufficientCoefficients("linear_modification: needs at least 2 coefficients, have " +
                                   std::to_string(L));
  }
  auto& q = scratch;
  q.resize(L);
  q[0] = 1.0;
  q[1] = y0 - a[0];
  for (std::size_t j = 2; j < L; ++j) q[j] = y0 - a[j - 1] - b[j - 1] / q[j - 1];

  const bool positive = q[1] > 0.0;
  for (std::size_t j = 1; j < L; ++j) {
    if (!std::isfinite(q[j]) || q[j] == 0.0 || (q[j] > 0.0) != positive) {
      throw DomainError("linear_modification: y0 = " + std::to_string(y0) +
                        " lies inside the zero hull of p_" + std::to_string(L - 1));
    }
  }

  log_mass += std::log(std::abs(q[1]));
  const std::size_t out = L - 1;
  for (std::size_t n = 0; n < out; ++n) {
    double delta = b[n + 1] / q[n + 1];
    if (n > 0) delta -= b[n] / q[n];
    a[n] -= delta;
    if (n > 0) b[n] *= q[n + 1] / q[n];
  }
  a.resize(out);
  b.resize(out);
  b[0] = 1.0;
}

RecurrenceTable ModificationWork::table() const {
  std::vector<double> bb = b;
  bb[0] = std::exp(log_mass);
  return RecurrenceTable(a, std::move(bb));
}

}  // namespace induced::detail

namespace induced {

RecurrenceTable linear_modification(const RecurrenceTable& table, double y0) {
  detail::ModificationWork w(table);
  w.linear(y0);
  return w.table();
}

RecurrenceTable quadratic_modification(const RecurrenceTable& table, double z0) {
  detail::ModificationWork w(table);
  w.quadratic(z0);
  return w.table();
}

RecurrenceTable repeated_quadratic(const RecurrenceTable& table,
                                   std::span<const double> centers, double log_scale) {
  if (table.size() < 2 * centers.size() + 1) {
    throw InsufficientCoefficients("repeated_quadratic: " + std::to_string(centers.size()) +
                                   " centers need at least " +
                                   std::to_string(2 * centers.size() + 1) +
                                   " coefficients, table has " +
                                   std::to_string(table.size()));
  }
  detail::ModificationWork w(table);
  for (double c : centers) w.quadratic(c);
  w.log_mass += log_scale;
  return w.table();
}

}  // namespace induced
