#include <benchmark/benchmark.h>

#include "bsdist/asymptotic.hpp"
#include "bsdist/contour.hpp"
#include "bsdist/exact.hpp"
#include "bsdist/oracle.hpp"
#include "bsdist/stats.hpp"

namespace {

bsdist::FockInput fock(std::int64_t n, std::int64_t na) {
  bsdist::FockInput in;
  in.n_total = n;
  in.n_a = na;
  return in;
}

void BM_ExactSeries(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    auto v = bsdist::exact_amplitudes(fock(N, N / 2));
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_ExactSeries)->Arg(100)->Arg(600)->Arg(2000)->Complexity();

void BM_LeibnizPoint(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    auto v = bsdist::leibniz_amplitude(fock(N, N / 2), N / 2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_LeibnizPoint)->Arg(100)->Arg(600);

void BM_AnalyticSeries(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    auto s = bsdist::distribution(fock(N, N / 2 + 6),
                                  bsdist::EngineKind::imbalanced_analytic);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_AnalyticSeries)->Arg(600)->Arg(2000);

void BM_Quadrature(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    auto v = bsdist::in_quadrature(N, 4, 0.25);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Quadrature)->Arg(40)->Arg(400);

void BM_OracleEvolve(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    auto v = bsdist::oracle_evolve(N, N / 2, bsdist::kHalfMixing);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_OracleEvolve)->Arg(50)->Arg(200)->Arg(600);

void BM_AveragedDirect(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  for (auto _ : state) {
    auto s =
        bsdist::averaged_distribution_direct(N, bsdist::AveragingWindow{16});
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_AveragedDirect)->Arg(600)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
