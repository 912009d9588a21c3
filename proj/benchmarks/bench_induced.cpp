#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "induced/induced_eval.hpp"
#include "induced/induced_inverse.hpp"
#include "induced/modification.hpp"
#include "induced/oracle.hpp"
#include "induced/sampling.hpp"

using namespace induced;

namespace {

const Jacobi kFig2(-0.8, std::sqrt(101.0));

}  // namespace

static void BM_IdistJacobi(benchmark::State& state) {
  const InducedDistribution d(kFig2, static_cast<int>(state.range(0)));
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.cdf(x));
    x = x > 0.98 ? -0.99 : x + 0.0197;
  }
}
BENCHMARK(BM_IdistJacobi)->Arg(13)->Arg(100)->Arg(1000);

// Same points through brute-force quadrature (panel integrals precomputed).
static void BM_OracleJacobi(benchmark::State& state) {
  const oracle::OracleDistribution o(kFig2, static_cast<int>(state.range(0)));
  double x = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(o.cdf(x));
    x = x > 0.98 ? -0.99 : x + 0.0197;
  }
}
BENCHMARK(BM_OracleJacobi)->Arg(13)->Arg(100);

static void BM_IdistHalfFreud(benchmark::State& state) {
  const InducedDistribution d(HalfLineFreud(1, std::sqrt(1001.0)), static_cast<int>(state.range(0)));
  const auto [lo, hi] = halffreud_bulk_interval(1, std::sqrt(1001.0), static_cast<int>(state.range(0)));
  double x = lo;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.cdf(x));
    x = x > hi ? lo : x + (hi - lo) / 37.0;
  }
}
BENCHMARK(BM_IdistHalfFreud)->Arg(20)->Arg(595);

static void BM_Inverse(benchmark::State& state) {
  const InducedDistribution d(Freud(2, 0), static_cast<int>(state.range(0)));
  double u = 0.013;
  for (auto _ : state) {
    benchmark::DoNotOptimize(idist_inverse(u, d));
    u = u > 0.97 ? 0.013 : u + 0.0311;
  }
}
BENCHMARK(BM_Inverse)->Arg(5)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_QuadraticModification(benchmark::State& state) {
  const auto t = jacobi_table(0.5, 1.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_modification(t, 0.3));
}
BENCHMARK(BM_QuadraticModification)->Arg(16)->Arg(256)->Arg(2048);

static void BM_SampleBatch(benchmark::State& state) {
  const MixtureSampler s(total_degree_set(2, static_cast<int>(state.range(0))),
                         TensorMeasure({Jacobi(0, 0), Jacobi(0, 0)}));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(s.sample_batch(100, seed++));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SampleBatch)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
