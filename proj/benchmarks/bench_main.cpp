#include <benchmark/benchmark.h>

#include "ecc/closed_form.hpp"
#include "ecc/coulomb_model.hpp"
#include "ecc/factorization.hpp"
#include "ecc/ladder.hpp"
#include "ecc/polynomial.hpp"

namespace {

void BM_ClosedForm(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0)) + 0.5;
  for (auto _ : state) benchmark::DoNotOptimize(ecc::exceptional_values(k));
}
BENCHMARK(BM_ClosedForm)->Arg(2)->Arg(20)->Arg(200);

void BM_NumericFinder(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0)) + 0.5;
  const ecc::ShootingConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(ecc::find_exceptional_numeric(k, cfg));
}
BENCHMARK(BM_NumericFinder)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Mismatch(benchmark::State& state) {
  const ecc::ShootingConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(ecc::mismatch({3.0, -1.7}, cfg));
}
BENCHMARK(BM_Mismatch)->Unit(benchmark::kMicrosecond);

void BM_ExactLevel(benchmark::State& state) {
  const auto kappa = ecc::parse_rational("7/3");
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ecc::level(kappa, j));
}
BENCHMARK(BM_ExactLevel)->Arg(4)->Arg(12);

void BM_CountZeros(benchmark::State& state) {
  const auto v = ecc::level(ecc::parse_rational("1/2"), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ecc::count_zeros(v));
}
BENCHMARK(BM_CountZeros)->Arg(4)->Arg(12);

void BM_AngleFunction(benchmark::State& state) {
  const ecc::AngleFunction phi(5, 1.0);
  double t = -10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(t));
    t = t > 10.0 ? -10.0 : t + 0.01;
  }
}
BENCHMARK(BM_AngleFunction);

void BM_HarmonicLadder(benchmark::State& state) {
  const auto level = ecc::harmonic_example(static_cast<int>(state.range(0)));
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(level.state.eval(x));
    x = x > 5.0 ? -5.0 : x + 0.01;
  }
}
BENCHMARK(BM_HarmonicLadder)->Arg(2)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
