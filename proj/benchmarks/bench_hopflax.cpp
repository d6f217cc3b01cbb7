#include <benchmark/benchmark.h>

#include "ihl/generators.hpp"
#include "ihl/lipschitz.hpp"
#include "ihl/theorems.hpp"

namespace {

ihl::Scenario affine(std::size_t n) {
  return ihl::generate(ihl::GeneratorSpec{ihl::Family::kAffineGraph, n, 1, 2.0, 2});
}

void BM_Sweep(benchmark::State& state) {
  const auto s = affine(static_cast<std::size_t>(state.range(0)));
  const auto threads = static_cast<unsigned>(state.range(1));
  const ihl::HopfLax hl(s.quotient, s.section, threads);
  for (auto _ : state) benchmark::DoNotOptimize(hl.sweep(s.tgrid, 0.0, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(s.tgrid.size()));
}
BENCHMARK(BM_Sweep)->Args({200, 1})->Args({1000, 1})->Args({1000, 4})->Unit(benchmark::kMillisecond);

void BM_GlobalIls(benchmark::State& state) {
  const auto s = affine(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ihl::global_ils(s.quotient, s.section));
}
BENCHMARK(BM_GlobalIls)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_SlopeReport(benchmark::State& state) {
  const auto s = affine(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ihl::slope_report(s.quotient, s.section, s.radius_schedule()));
  }
}
BENCHMARK(BM_SlopeReport)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Harness(benchmark::State& state) {
  const auto s = affine(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const ihl::Harness h(s);
    benchmark::DoNotOptimize(h.run(ihl::kAllTheorems));
  }
}
BENCHMARK(BM_Harness)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
