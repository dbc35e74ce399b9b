#include <benchmark/benchmark.h>

#include "cmv/cm_engine.hpp"
#include "cmv/paper_functions.hpp"
#include "cmv/special_functions.hpp"

using namespace cmv;

namespace {

// state.range(0) is the working precision in decimal digits throughout.

void BM_Polygamma(benchmark::State& state) {
  PrecisionScope scope(static_cast<int>(state.range(0)));
  const PrecisionConfig cfg = PrecisionConfig::with_digits(static_cast<int>(state.range(0)));
  const BigReal x = BigReal::parse("2.75");
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(polygamma(n, x, cfg));
}
BENCHMARK(BM_Polygamma)->ArgsProduct({{30, 50, 100}, {1, 8}});

void BM_Phi(benchmark::State& state) {
  PrecisionScope scope(static_cast<int>(state.range(0)));
  const PrecisionConfig cfg = PrecisionConfig::with_digits(static_cast<int>(state.range(0)));
  const BigReal x = BigReal::parse("0.37");
  for (auto _ : state) benchmark::DoNotOptimize(phi(x, cfg));
}
BENCHMARK(BM_Phi)->Arg(30)->Arg(50)->Arg(100);

void BM_FmLaguerre(benchmark::State& state) {
  PrecisionScope scope(50);
  const PrecisionConfig cfg = PrecisionConfig::with_digits(50);
  const int m = static_cast<int>(state.range(0));
  const BigReal t = BigReal::parse("3.5");
  for (auto _ : state) benchmark::DoNotOptimize(f_m(m, t, cfg));
}
BENCHMARK(BM_FmLaguerre)->Arg(2)->Arg(10)->Arg(60);

void BM_HardyLittlewoodH(benchmark::State& state) {
  PrecisionScope scope(static_cast<int>(state.range(0)));
  const PrecisionConfig cfg = PrecisionConfig::with_digits(static_cast<int>(state.range(0)));
  const BigReal z = BigReal(static_cast<long>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(hardy_littlewood_H(z, cfg));
}
BENCHMARK(BM_HardyLittlewoodH)->ArgsProduct({{30, 50}, {10, 1000}})->Unit(benchmark::kMicrosecond);

void BM_PhiQ(benchmark::State& state) {
  PrecisionScope scope(50);
  const PrecisionConfig cfg = PrecisionConfig::with_digits(50);
  const BigReal q = BigReal::parse(state.range(0) == 9 ? "0.9" : "0.5");
  for (auto _ : state) benchmark::DoNotOptimize(phi_q(q, 3, BigReal(2), cfg));
}
BENCHMARK(BM_PhiQ)->Arg(5)->Arg(9);

void BM_CheckCm(benchmark::State& state) {
  PrecisionScope scope(50);
  const PrecisionConfig cfg = PrecisionConfig::with_digits(50);
  const GridSpec grid = GridSpec::logarithmic(BigReal::parse("0.01"), BigReal(1000), 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_cm(FunctionId::phi_scaled(3, BigReal(1)), grid, 6, cfg, 1));
  }
}
BENCHMARK(BM_CheckCm)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
