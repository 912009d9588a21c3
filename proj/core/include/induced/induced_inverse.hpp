#pragma once

#include <utility>

#include "induced/induced_eval.hpp"
#include "induced/measures.hpp"
#include "induced/recurrence.hpp"

namespace induced {

/// Recurrence table (N + 1 entries) of mu_n = p_n^2 dmu, built by n quadratic
/// modifications at the zeros of p_n.
RecurrenceTable induced_recurrence(const MeasureSpec& spec, int n, int N,
                                   const CoefficientRegistry& registry = {});

/// Bracket [x_minus, x_plus] containing F_n^{-1}(u), from the N-point Gauss
/// rule of mu_n: with S_m the partial weight sums and S_{m-1} <= u <= S_m,
/// returns (z_{m-1}, z_{m+1}) where z_0 and z_{N+1} are the support ends.
/// N = 0 selects the distribution's cached default rule.
std::pair<double, double> markov_stiltjies_interval(double u, const InducedDistribution& dist,
                                                    int N = 0);

/// F_n^{-1}(u) by bisection from the Markov-Stieltjes bracket. Stops when the
/// bracket width is at most tol * max(1, |x_minus| + |x_plus|) or
/// |F_n(mid) - u| <= tol. u = 0 and u = 1 return the support ends (possibly
/// infinite).
double idist_inverse(double u, const InducedDistribution& dist, double tol = 1e-12);

}  // namespace induced
