#pragma once

#include <span>
#include <vector>

#include "induced/recurrence.hpp"

namespace induced {

/// Coefficients of |x - y0| dmu for y0 outside the zero hull of the
/// highest-degree polynomial of the table. Output has one fewer entry.
///
/// With q_j = sqrt(b_j) r_j(y0):
///   a~_n = a_n - b_{n+1}/q_{n+1} + b_n/q_n   (last term absent at n = 0)
///   b~_0 = |b_0 q_1|,  b~_n = b_n q_{n+1}/q_n.
RecurrenceTable linear_modification(const RecurrenceTable& table, double y0);

/// Coefficients of (x - z0)^2 dmu for any real z0. Output has two fewer entries.
RecurrenceTable quadratic_modification(const RecurrenceTable& table, double z0);

/// One quadratic modification per center, then b_0 *= exp(log_scale).
RecurrenceTable repeated_quadratic(const RecurrenceTable& table,
                                   std::span<const double> centers, double log_scale);

namespace detail {

/// Working table for chains of modifications. b[0] is pinned to 1 and the
/// total mass is carried as log_mass, so long chains never overflow.
struct ModificationWork {
  std::vector<double> a;
  std::vector<double> b;
  double log_mass = 0.0;
  std::vector<double> scratch;
  std::vector<double> sqrt_b;
  std::vector<double> norm;

  explicit ModificationWork(const RecurrenceTable& table);
  ModificationWork(std::span<const double> a_in, std::span<const double> b_in);

  std::size_t size() const noexcept { return a.size(); }
  void quadratic(double z0);
  void linear(double y0);
  RecurrenceTable table() const;
};

}  // namespace detail

}  // namespace induced
