#pragma once

namespace induced {

/// Natural logarithm of the Gamma function for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

double log_beta(double a, double b);
double beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for x in [0, 1], a, b > 0.
double reg_inc_beta(double x, double a, double b);

double erf(double x);
double erfc(double x);

}  // namespace induced
