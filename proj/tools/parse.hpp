#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "induced/measures.hpp"
#include "induced/sampling.hpp"

namespace induced::cli {

// Bad command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeasureChoice {
  MeasureSpec spec;
  CoefficientRegistry registry;
};

/// "1.5,-0.5" -> {1.5, -0.5}. Accepts "pi" and "e" as values.
std::vector<double> parse_reals(const std::string& text);

/// Builds a measure from --measure/--params/--table. For hf and freud a
/// table is registered under the given parameters; for custom it is the
/// measure itself.
MeasureChoice make_measure(const std::string& family, const std::string& params,
                           const std::string& table_path);

/// "jacobi:0,0", "hf:1,0", "freud:2,0".
MeasureSpec parse_measure_token(const std::string& token);

/// Comma list, "linspace:lo,hi,count", or a file with one value per line.
std::vector<double> parse_points(const std::string& text);

/// "total-degree:d,n" or a file with one multi-index per line.
MultiIndexSet parse_index_set(const std::string& text, int dims);

/// 17 significant digits; infinities as "inf" / "-inf".
std::string fmt(double v);

}  // namespace induced::cli
