#include "induced/sampling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <thread>

#include "induced/error.hpp"
#include "induced/induced_inverse.hpp"
#include "induced/recurrence.hpp"
#include "induced/special_functions.hpp"

namespace induced {

MultiIndexSet::MultiIndexSet(int dimension, std::vector<std::vector<int>> indices,
                             bool require_downward_closed)
    : dimension_(dimension), indices_(std::move(indices)) {
  if (dimension_ < 1) throw DomainError("MultiIndexSet: dimension must be at least 1");
  if (indices_.empty()) throw DomainError("MultiIndexSet: empty index set");
  std::set<std::vector<int>> seen;
  for (const auto& idx : indices_) {
    if (idx.size() != static_cast<std::size_t>(dimension_)) {
      throw DomainError("MultiIndexSet: index of length " + std::to_string(idx.size()) +
                        " in dimension " + std::to_string(dimension_));
    }
    if (std::any_of(idx.begin(), idx.end(), [](int k) { return k < 0; })) {
      throw DomainError("MultiIndexSet: negative index component");
    }
    if (!seen.insert(idx).second) throw DomainError("MultiIndexSet: duplicate index");
  }
  if (require_downward_closed && !is_downward_closed()) {
    throw DomainError("MultiIndexSet: set is not downward closed");
  }
}

bool MultiIndexSet::is_downward_closed() const {
  const std::set<std::vector<int>> all(indices_.begin(), indices_.end());
  // Checking the immediate predecessors suffices by induction.
  for (const auto& idx : indices_) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (idx[j] == 0) continue;
      auto lower = idx;
      --lower[j];
      if (!all.count(lower)) return false;
    }
  }
  return true;
}

int MultiIndexSet::max_order(int j) const {
  int m = 0;
  for (const auto& idx : indices_) m = std::max(m, idx[static_cast<std::size_t>(j)]);
  return m;
}

MultiIndexSet total_degree_set(int d, int n) {
  if (d < 1 || n < 0) throw DomainError("total_degree_set: need d >= 1 and n >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  // Odometer over lexicographic order, pruned by the degree budget.
  auto rec = [&](auto&& self, std::size_t pos, int budget) -> void {
    if (pos == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= budget; ++k) {
      cur[pos] = k;
      self(self, pos + 1, budget - k);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, n);
  return MultiIndexSet(d, std::move(out));
}

TensorMeasure::TensorMeasure(std::vector<MeasureSpec> marginals, CoefficientRegistry registry)
    : marginals_(std::move(marginals)), registry_(std::move(registry)) {
  if (marginals_.empty()) throw DomainError("TensorMeasure: needs at least one marginal");
}

MixtureSampler::MixtureSampler(MultiIndexSet indices, TensorMeasure measures, double tol)
    : indices_(std::move(indices)), measures_(std::move(measures)), tol_(tol) {
  const int d = indices_.dimension();
  if (d != measures_.dimension()) {
    throw DomainError("MixtureSampler: index dimension " + std::to_string(d) +
                      " does not match " + std::to_string(measures_.dimension()) +
                      " marginals");
  }
  std::vector<std::string> names;
  std::vector<int> orders;
  slot_of_.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto name = describe(measures_.marginal(j));
    const auto it = std::find(names.begin(), names.end(), name);
    const int need = indices_.max_order(j);
    if (it == names.end()) {
      slot_of_[static_cast<std::size_t>(j)] = names.size();
      names.push_back(name);
      orders.push_back(need);
    } else {
      const auto slot = static_cast<std::size_t>(it - names.begin());
      slot_of_[static_cast<std::size_t>(j)] = slot;
      orders[slot] = std::max(orders[slot], need);
    }
  }
  by_slot_.resize(names.size());
  for (int j = 0; j < d; ++j) {
    const auto slot = slot_of_[static_cast<std::size_t>(j)];
    auto& dists = by_slot_[slot];
    if (!dists.empty()) continue;
    for (int k = 0; k <= orders[slot]; ++k) {
      dists.emplace_back(measures_.marginal(j), k, std::nullopt, measures_.registry());
      dists.back().induced_rule();
    }
  }
}

const InducedDistribution& MixtureSampler::distribution(int coordinate, int order) const {
  return by_slot_[slot_of_[static_cast<std::size_t>(coordinate)]]
                 [static_cast<std::size_t>(order)];
}

std::vector<double> MixtureSampler::sample(CounterRng& rng) const {
  const auto& lambda = indices_[rng.next_below(indices_.size())];
  std::vector<double> x(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    const double u = rng.next_open01();
    x[j] = idist_inverse(u, distribution(static_cast<int>(j), lambda[j]), tol_);
  }
  return x;
}

std::vector<double> MixtureSampler::sample_batch(std::size_t count, std::uint64_t seed,
                                                 unsigned threads) const {
  const std::size_t d = static_cast<std::size_t>(indices_.dimension());
  std::vector<double> out(count * d);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const auto x = sample(rng);
      std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    work(0, count);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = std::min(count, t * chunk);
    const std::size_t e = std::min(count, b + chunk);
    pool.emplace_back([&, b, e, t] {
      try {
        work(b, e);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return out;
}

std::vector<double> sample_mixture(const MultiIndexSet& indices, const TensorMeasure& measures,
                                   CounterRng& rng) {
  return MixtureSampler(indices, measures).sample(rng);
}

LSDesign ls_design(const MultiIndexSet& indices, const TensorMeasure& measures,
                   std::span<const double> samples) {
  const int d = indices.dimension();
  if (d != measures.dimension()) throw DomainError("ls_design: dimension mismatch");
  const auto du = static_cast<std::size_t>(d);
  if (samples.size() % du != 0) throw DomainError("ls_design: sample array is not M x d");

  LSDesign out;
  out.d = d;
  out.M = samples.size() / du;
  out.N = indices.size();
  out.samples.assign(samples.begin(), samples.end());
  out.V.resize(out.M * out.N);
  out.weights.resize(out.M);

  std::vector<RecurrenceTable> tables;
  for (int j = 0; j < d; ++j) {
    tables.push_back(
        recurrence_table(measures.marginal(j), indices.max_order(j), measures.registry()));
  }
  std::vector<std::vector<double>> p(du);
  for (std::size_t m = 0; m < out.M; ++m) {
    for (std::size_t j = 0; j < du; ++j) {
      p[j] = eval_poly(tables[j], samples[m * du + j], indices.max_order(static_cast<int>(j)));
    }
    double sum_sq = 0.0;
    for (std::size_t n = 0; n < out.N; ++n) {
      double v = 1.0;
      for (std::size_t j = 0; j < du; ++j) v *= p[j][static_cast<std::size_t>(indices[n][j])];
      out.V[m * out.N + n] = v;
      sum_sq += v * v;
    }
    if (!(sum_sq > 0.0) || !std::isfinite(sum_sq)) {
      throw NumericError("ls_design: degenerate basis evaluation at sample " + std::to_string(m));
    }
    out.weights[m] = static_cast<double>(out.N) / sum_sq;
  }
  return out;
}

std::vector<double> gram_matrix(const LSDesign& design) {
  const std::size_t N = design.N;
  std::vector<double> G(N * N, 0.0);
  for (std::size_t m = 0; m < design.M; ++m) {
    const double w = design.w_diag(m);
    const double* row = &design.V[m * N];
    for (std::size_t i = 0; i < N; ++i) {
      const double wi = w * row[i];
      for (std::size_t k = i; k < N; ++k) G[i * N + k] += wi * row[k];
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t k = 0; k < i; ++k) G[i * N + k] = G[k * N + i];
  }
  return G;
}

double gram_discrepancy(const LSDesign& design) {
  const std::size_t N = design.N;
  auto G = gram_matrix(design);
  for (std::size_t i = 0; i < N; ++i) G[i * N + i] -= 1.0;

  // Power iteration; the starting vector is fixed and generic.
  CounterRng rng(0x5eedULL);
  std::vector<double> x(N), y(N);
  for (double& xi : x) xi = rng.next_open01() - 0.5;
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    s = std::sqrt(s);
    if (s > 0.0) {
      for (double& e : v) e /= s;
    }
    return s;
  };
  normalize(x);
  // The estimates increase geometrically towards the limit, so the remaining
  // error is about step * rate / (1 - rate), with the rate read off two steps.
  double estimate = 0.0;
  double last_step = 0.0;
  for (int it = 0; it < 10000; ++it) {
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += G[i * N + k] * x[k];
      y[i] = s;
    }
    const double next = normalize(y);
    if (next == 0.0) return 0.0;
    const double step = std::abs(next - estimate);
    const double rate = last_step > 0.0 ? std::min(step / last_step, 0.999) : 0.999;
    const bool done = it > 1 && step * std::max(1.0, rate / (1.0 - rate)) <= 1e-10 * next;
    last_step = step;
    estimate = next;
    std::swap(x, y);
    if (done) break;
  }
  return estimate;
}

std::vector<double> least_squares(const LSDesign& design, std::span<const double> f_values) {
  if (f_values.size() != design.M) throw DomainError("least_squares: need one value per sample");
  const auto M = static_cast<Eigen::Index>(design.M);
  const auto N = static_cast<Eigen::Index>(design.N);
  Eigen::MatrixXd A(M, N);
  Eigen::VectorXd rhs(M);
  for (Eigen::Index m = 0; m < M; ++m) {
    const double s = std::sqrt(design.w_diag(static_cast<std::size_t>(m)));
    for (Eigen::Index n = 0; n < N; ++n) {
      A(m, n) = s * design.v(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
    }
    rhs(m) = s * f_values[static_cast<std::size_t>(m)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < N) {
    throw IllConditionedDesign("least_squares: weighted design has numerical rank " +
                                   std::to_string(qr.rank()) + " < " + std::to_string(N),
                               gram_discrepancy(design));
  }
  const Eigen::VectorXd c = qr.solve(rhs);
  return {c.data(), c.data() + N};
}

double c_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("c_delta: delta must lie in (0, 1)");
  return delta + (1.0 - delta) * std::log1p(-delta);
}

std::size_t sample_count(std::size_t N, double r, double delta) {
  if (!(r > 0.0)) throw DomainError("sample_count: r must be positive");
  const double K = static_cast<double>(N) * (1.0 + r) / c_delta(delta);
  auto ok = [&](double M) { return M / std::log(M) >= K; };
  // K log K never exceeds the answer since M / log M is increasing for M >= e.
  double start = K > std::exp(1.0) ? std::floor(K * std::log(K)) : 3.0;
  std::size_t M = std::max<std::size_t>(3, static_cast<std::size_t>(start));
  while (!ok(static_cast<double>(M))) ++M;
  return M;
}

double equilibrium_cdf(int d, double r) {
  if (d < 1) throw DomainError("equilibrium_cdf: d must be positive");
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("equilibrium_cdf: r outside [0, 1]");
  return reg_inc_beta(r * r, 0.5 * d, 0.5 * d + 1.0);
}

EquilibriumResult equilibrium_experiment(int d, int n, std::size_t M, std::uint64_t seed,
                                         unsigned threads) {
  if (n < 1) throw DomainError("equilibrium_experiment: degree must be positive");
  std::vector<MeasureSpec> marginals(static_cast<std::size_t>(d), Freud(2.0, 0.0));
  const MixtureSampler sampler(total_degree_set(d, n), TensorMeasure(std::move(marginals)));
  const auto xs = sampler.sample_batch(M, seed, threads);

  EquilibriumResult out;
  out.radii.resize(M);
  const double scale = 1.0 / std::sqrt(2.0 * n);
  for (std::size_t m = 0; m < M; ++m) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      const double v = xs[m * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
      s += v * v;
    }
    out.radii[m] = std::sqrt(s) * scale;
  }
  std::sort(out.radii.begin(), out.radii.end());
  out.ks_distance = ks_distance(std::span<const double>(out.radii),
                                [d](double r) { return equilibrium_cdf(d, std::min(r, 1.0)); });
  return out;
}

}  // namespace induced
