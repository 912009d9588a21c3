#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "induced/induced_eval.hpp"

namespace induced {

struct InducedDistribution::State {
  MeasureSpec spec;
  int n = 0;
  int M = 0;
  Support support{};
  double x0 = 0.0;
  std::vector<double> zeros;
  double log_gamma = 0.0;
  CoefficientRegistry registry;
  // Table of the measure itself (at least n + 1 entries).
  RecurrenceTable table;
  // Half-line Freud only: table of HF(alpha, 0) for the complementary branch.
  RecurrenceTable right_base;
  // Freud only: half-line distribution of order n/2 or (n-1)/2.
  std::shared_ptr<const InducedDistribution> half;

  int ms_N = 0;
  mutable std::once_flag ms_once;
  mutable QuadratureRule ms_rule;

  explicit State(MeasureSpec s) : spec(std::move(s)) {}
};

}  // namespace induced
