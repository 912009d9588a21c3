// induced: command-line front end for the induced-distribution library.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "induced/error.hpp"
#include "induced/induced_eval.hpp"
#include "induced/induced_inverse.hpp"
#include "induced/sampling.hpp"
#include "induced/table_io.hpp"
#include "parse.hpp"

namespace {

using namespace induced;
using induced::cli::fmt;

constexpr int kNumericFailure = 1;
constexpr int kUsage = 2;

struct MeasureFlags {
  std::string family = "jacobi";
  std::string params = "0,0";
  std::string table;
};

void add_measure_flags(CLI::App* cmd, MeasureFlags& m) {
  cmd->add_option("--measure", m.family, "jacobi | hf | freud | custom")
      ->check(CLI::IsMember({"jacobi", "hf", "freud", "custom"}));
  cmd->add_option("--params", m.params, "two comma-separated parameters, e.g. 0.5,-0.5");
  cmd->add_option("--table", m.table,
                  "coefficient table CSV (the measure for custom; extra coefficients for hf/freud)");
}

// Output goes to --out when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw cli::UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& operator*() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<MeasureSpec> marginals_from(const std::vector<std::string>& tokens, int dims) {
  if (dims < 1) throw cli::UsageError("--dims must be positive");
  std::vector<MeasureSpec> out;
  if (tokens.size() == 1) {
    out.assign(static_cast<std::size_t>(dims), cli::parse_measure_token(tokens[0]));
  } else if (tokens.size() == static_cast<std::size_t>(dims)) {
    for (const auto& t : tokens) out.push_back(cli::parse_measure_token(t));
  } else {
    throw cli::UsageError("give one --measures value or exactly --dims of them");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Induced distributions of orthogonal polynomials: evaluation, inversion, sampling"};
  app.require_subcommand(1);

  // coeffs
  MeasureFlags coeffs_m;
  int coeffs_N = 10;
  std::string coeffs_out;
  auto* coeffs = app.add_subcommand("coeffs", "write a recurrence coefficient table");
  add_measure_flags(coeffs, coeffs_m);
  coeffs->add_option("-N", coeffs_N, "largest index")->check(CLI::NonNegativeNumber);
  coeffs->add_option("--out", coeffs_out, "output file (default stdout)");

  // eval
  MeasureFlags eval_m;
  int eval_n = 0;
  std::optional<int> eval_M;
  std::string eval_x;
  bool eval_bound = false;
  auto* eval = app.add_subcommand("eval", "evaluate F_n at points");
  add_measure_flags(eval, eval_m);
  eval->add_option("-n", eval_n, "polynomial degree")->check(CLI::NonNegativeNumber);
  eval->add_option("-M", eval_M, "quadrature size");
  eval->add_option("--x", eval_x, "comma list, linspace:lo,hi,count, or file")->required();
  eval->add_flag("--bound", eval_bound, "add the truncation error bound column (jacobi)");

  // invert
  MeasureFlags inv_m;
  int inv_n = 0;
  std::string inv_u;
  double inv_tol = 1e-12;
  auto* invert = app.add_subcommand("invert", "evaluate the inverse F_n^{-1}(u)");
  add_measure_flags(invert, inv_m);
  invert->add_option("-n", inv_n, "polynomial degree")->check(CLI::NonNegativeNumber);
  invert->add_option("--u", inv_u, "comma list, linspace:lo,hi,count, or file")->required();
  invert->add_option("--tol", inv_tol, "bisection tolerance")->check(CLI::PositiveNumber);

  // sample
  int samp_dims = 1;
  std::vector<std::string> samp_measures{"jacobi:0,0"};
  std::string samp_lambda;
  std::size_t samp_count = 100;
  std::uint64_t samp_seed = 1;
  unsigned samp_threads = 1;
  std::string samp_out;
  auto* sample = app.add_subcommand("sample", "draw from the index-set mixture measure");
  sample->add_option("--dims", samp_dims, "dimension");
  sample->add_option("--measures", samp_measures,
                     "family:p,q, once for all coordinates or once per coordinate");
  sample->add_option("--lambda", samp_lambda, "total-degree:d,n or a file of multi-indices")
      ->required();
  sample->add_option("--count", samp_count, "number of samples");
  sample->add_option("--seed", samp_seed, "seed");
  sample->add_option("--threads", samp_threads, "worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--out", samp_out, "output file (default stdout)");

  // ls-demo
  int ls_dims = 2;
  int ls_degree = 5;
  std::vector<double> ls_delta{0.5};
  double ls_r = 1.0;
  int ls_trials = 50;
  std::uint64_t ls_seed = 1;
  std::vector<std::string> ls_measures{"jacobi:0,0"};
  auto* ls = app.add_subcommand("ls-demo", "Gram-matrix concentration of the weighted LS design");
  ls->add_option("--dims", ls_dims, "dimension");
  ls->add_option("--degree", ls_degree, "total degree");
  ls->add_option("--delta", ls_delta, "discrepancy level(s) delta in (0,1)")->delimiter(',');
  ls->add_option("--r", ls_r, "failure-probability exponent r");
  ls->add_option("--trials", ls_trials, "trials per delta")->check(CLI::PositiveNumber);
  ls->add_option("--seed", ls_seed, "seed");
  ls->add_option("--measures", ls_measures, "family:p,q (default Legendre)");

  // equilibrium
  int eq_dims = 2;
  int eq_degree = 100;
  std::size_t eq_count = 20000;
  std::uint64_t eq_seed = 1;
  unsigned eq_threads = 1;
  std::string eq_out;
  auto* eq = app.add_subcommand("equilibrium", "radial law of Gaussian total-degree samples");
  eq->add_option("--dims", eq_dims, "dimension");
  eq->add_option("--degree", eq_degree, "total degree");
  eq->add_option("--count", eq_count, "number of samples");
  eq->add_option("--seed", eq_seed, "seed");
  eq->add_option("--threads", eq_threads, "worker threads")->check(CLI::PositiveNumber);
  eq->add_option("--out", eq_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*coeffs) {
      const auto m = cli::make_measure(coeffs_m.family, coeffs_m.params, coeffs_m.table);
      const auto table = std::holds_alternative<Custom>(m.spec)
                             ? std::get<Custom>(m.spec).table.truncated(
                                   static_cast<std::size_t>(coeffs_N) + 1)
                             : recurrence_table(m.spec, coeffs_N, m.registry);
      Sink out(coeffs_out);
      write_table(table, support(m.spec), *out);
    } else if (*eval) {
      const auto m = cli::make_measure(eval_m.family, eval_m.params, eval_m.table);
      if (eval_bound && !std::holds_alternative<Jacobi>(m.spec)) {
        throw cli::UsageError("--bound is available for jacobi only");
      }
      const auto xs = cli::parse_points(eval_x);
      const InducedDistribution dist(m.spec, eval_n, eval_M, m.registry);
      std::cout << (eval_bound ? "x,F,bound\n" : "x,F\n");
      for (double x : xs) {
        std::cout << fmt(x) << ',' << fmt(dist.cdf(x));
        if (eval_bound) {
          const auto& j = std::get<Jacobi>(m.spec);
          const double bound = std::abs(x) == 1.0 ? 0.0
                                   : idist_jacobi_detailed(j.alpha, j.beta, eval_n, x,
                                                           dist.quadrature_size())
                                         .error_bound;
          std::cout << ',' << fmt(bound);
        }
        std::cout << '\n';
      }
    } else if (*invert) {
      const auto m = cli::make_measure(inv_m.family, inv_m.params, inv_m.table);
      const auto us = cli::parse_points(inv_u);
      const InducedDistribution dist(m.spec, inv_n, {}, m.registry);
      std::cout << "u,x\n";
      for (double u : us) std::cout << fmt(u) << ',' << fmt(idist_inverse(u, dist, inv_tol)) << '\n';
    } else if (*sample) {
      TensorMeasure measures(marginals_from(samp_measures, samp_dims));
      const MixtureSampler sampler(cli::parse_index_set(samp_lambda, samp_dims),
                                   std::move(measures));
      const auto xs = sampler.sample_batch(samp_count, samp_seed, samp_threads);
      Sink sink(samp_out);
      std::ostream& out = *sink;
      for (int j = 0; j < samp_dims; ++j) out << (j ? ",x" : "x") << j + 1;
      out << '\n';
      const auto d = static_cast<std::size_t>(samp_dims);
      for (std::size_t i = 0; i < samp_count; ++i) {
        for (std::size_t j = 0; j < d; ++j) out << (j ? "," : "") << fmt(xs[i * d + j]);
        out << '\n';
      }
    } else if (*ls) {
      const auto indices = total_degree_set(ls_dims, ls_degree);
      const TensorMeasure measures(marginals_from(ls_measures, ls_dims));
      const MixtureSampler sampler(indices, measures);
      std::cout << "# N=" << indices.size() << '\n';
      std::cout << "delta,c_delta,M,trial,gram_discrepancy,success\n";
      std::vector<std::pair<double, double>> fractions;
      for (double delta : ls_delta) {
        const double cd = c_delta(delta);
        const std::size_t M = sample_count(indices.size(), ls_r, delta);
        int good = 0;
        for (int t = 0; t < ls_trials; ++t) {
          const auto seed = ls_seed + static_cast<std::uint64_t>(t);
          const auto design = ls_design(indices, measures, sampler.sample_batch(M, seed));
          const double disc = gram_discrepancy(design);
          const bool ok = disc <= delta;
          good += ok ? 1 : 0;
          std::cout << fmt(delta) << ',' << fmt(cd) << ',' << M << ',' << t << ',' << fmt(disc)
                    << ',' << (ok ? 1 : 0) << '\n';
        }
        fractions.emplace_back(delta, static_cast<double>(good) / ls_trials);
      }
      for (const auto& [delta, frac] : fractions) {
        std::cout << "# success_fraction delta=" << fmt(delta) << ' ' << fmt(frac) << '\n';
      }
    } else if (*eq) {
      const auto result = equilibrium_experiment(eq_dims, eq_degree, eq_count, eq_seed, eq_threads);
      Sink sink(eq_out);
      std::ostream& out = *sink;
      out << "r,empirical_cdf,G_d\n";
      const double M = static_cast<double>(result.radii.size());
      for (std::size_t i = 0; i < result.radii.size(); ++i) {
        const double r = result.radii[i];
        out << fmt(r) << ',' << fmt(static_cast<double>(i + 1) / M) << ','
            << fmt(equilibrium_cdf(eq_dims, std::min(r, 1.0))) << '\n';
      }
      out << "# ks_distance," << fmt(result.ks_distance) << '\n';
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "induced: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedMeasure& e) {
    std::cerr << "induced: unsupported measure: " << e.what()
              << "\n  (pass the table with --table FILE, or use --measure custom --table FILE)\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "induced: table parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "induced: " << e.what() << '\n';
    return kUsage;
  } catch (const InsufficientCoefficients& e) {
    std::cerr << "induced: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "induced: numerical failure: " << e.what() << '\n';
    return kNumericFailure;
  }
  return 0;
}
