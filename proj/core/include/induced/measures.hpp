#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "induced/recurrence.hpp"

namespace induced {

/// (1-x)^alpha (1+x)^beta / c_J on [-1, 1]; alpha, beta > -1.
struct Jacobi {
  Jacobi(double alpha, double beta);
  double alpha;
  double beta;
};

/// x^rho exp(-x^alpha) / c_HF on [0, inf); alpha > 1/2, rho > -1.
struct HalfLineFreud {
  HalfLineFreud(double alpha, double rho);
  double alpha;
  double rho;
};

/// |x|^rho exp(-|x|^alpha) / c_F on the real line; alpha > 1, rho > -1.
struct Freud {
  Freud(double alpha, double rho);
  double alpha;
  double rho;
};

/// Support endpoints; either may be infinite.
struct Support {
  double lower;
  double upper;
  bool bounded() const;
};

/// A measure known only through its recurrence coefficients.
struct Custom {
  Custom(Support support, RecurrenceTable table);
  Support support;
  RecurrenceTable table;
};

using MeasureSpec = std::variant<Jacobi, HalfLineFreud, Freud, Custom>;

std::string describe(const MeasureSpec& spec);

/// Normalization constant, both as a logarithm and as a plain value
/// (the latter may overflow to inf for extreme parameters).
struct NormalizationConstant {
  double log_value;
  double value;
};

/// c_J = 2^{a+b+1} B(b+1, a+1); c_HF = Gamma((rho+1)/alpha)/alpha;
/// c_F = 2 Gamma((rho+1)/alpha)/alpha. Custom measures raise UnsupportedMeasure.
NormalizationConstant normalization_constant(const MeasureSpec& spec);

Support support(const MeasureSpec& spec);

/// h^2 = Gamma((rho+1)/alpha) / Gamma((rho+3)/alpha) for a Freud weight.
double h_squared(double alpha, double rho);

/// Half-line images of an even (Freud-type) table: `star` is orthonormal for
/// the weight t^{(rho-1)/2} exp(-t^{alpha/2}), `starstar` for
/// t^{(rho+1)/2} exp(-t^{alpha/2}). For an input of length L the outputs
/// have lengths floor(L/2) and floor((L-1)/2).
struct HalfLinePair {
  RecurrenceTable star;
  RecurrenceTable starstar;
};

/// Throws DomainError if any a_j is nonzero.
HalfLinePair halfline_from_freud(const RecurrenceTable& freud);

/// Inverse of the `star` map: rebuilds the even table (length 2K+2 from K+1
/// half-line pairs). Throws InconsistentCoefficients if an induced b_j <= 0.
RecurrenceTable freud_from_halfline(const RecurrenceTable& star);

/// User-supplied coefficient tables for half-line Freud and Freud parameters
/// without closed-form coefficients. A table registered for one family also
/// serves the other through the even/odd interleaving maps.
class CoefficientRegistry {
 public:
  void add(const HalfLineFreud& measure, RecurrenceTable table);
  void add(const Freud& measure, RecurrenceTable table);

  /// Longest available table for the measure, if any (built-in closed forms
  /// are not consulted here).
  std::optional<RecurrenceTable> lookup(const HalfLineFreud& measure) const;
  std::optional<RecurrenceTable> lookup(const Freud& measure) const;

 private:
  std::vector<std::pair<HalfLineFreud, RecurrenceTable>> halfline_;
  std::vector<std::pair<Freud, RecurrenceTable>> freud_;
};

/// Probability-normalized recurrence table with N+1 entries (indices 0..N).
/// Closed forms cover Jacobi, half-line Freud with alpha = 1 (Laguerre) and
/// Freud with alpha = 2 (generalized Hermite); other half-line Freud / Freud
/// parameters come from the registry or raise UnsupportedMeasure.
RecurrenceTable recurrence_table(const MeasureSpec& spec, int N,
                                 const CoefficientRegistry& registry = {});

RecurrenceTable jacobi_table(double alpha, double beta, int N);
RecurrenceTable laguerre_table(double rho, int N);
RecurrenceTable hermite_table(double rho, int N);

}  // namespace induced
