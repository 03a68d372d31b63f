#include <benchmark/benchmark.h>

#include "oracle_suite.hpp"
#include "quarkonia/approximation.hpp"
#include "quarkonia/numerov.hpp"
#include "quarkonia/spectrum_analysis.hpp"

using namespace quarkonia;

namespace {

const QuarkoniumParams kCharmonium{0.5, 0.15, 1.0, 1.5, 1.5, 0, 1.0};

void BM_FindEigenvalueCornell(benchmark::State& state) {
  const int n_r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_eigenvalue(potential::CornellSpin{kCharmonium}, kCharmonium, 0, n_r).energy);
  }
}
BENCHMARK(BM_FindEigenvalueCornell)->Arg(0)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_SolveSpectrum(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_spectrum(potential::CornellSpin{kCharmonium}, kCharmonium, 1, 4));
  }
}
BENCHMARK(BM_SolveSpectrum)->Unit(benchmark::kMillisecond);

void BM_OeaChain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_oea_chain(kCharmonium, 0).level(3));
}
BENCHMARK(BM_OeaChain);

void BM_OracleSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_oracle_suite().all_pass);
}
BENCHMARK(BM_OracleSuite)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_CompareCharmonium(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compare_spectra(kCharmonium).rows.size());
}
BENCHMARK(BM_CompareCharmonium)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
