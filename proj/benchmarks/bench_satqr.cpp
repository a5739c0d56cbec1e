#include <benchmark/benchmark.h>

#include "satqr/satqr.hpp"

namespace {

void BM_AnalyzePoint(benchmark::State& state) {
  const satqr::SystemParams p;
  const auto scheme = state.range(0) ? satqr::Scheme::two_memory : satqr::Scheme::one_memory;
  for (auto _ : state) benchmark::DoNotOptimize(satqr::analyze_point(p, 30.0, scheme));
}
BENCHMARK(BM_AnalyzePoint)->Arg(0)->Arg(1);

void BM_LossSweep(benchmark::State& state) {
  const satqr::SystemParams p;
  satqr::SweepSpec spec;
  spec.schemes = {satqr::Scheme::one_memory, satqr::Scheme::two_memory};
  spec.modes = {satqr::KeyMode::finite, satqr::KeyMode::asymptotic};
  for (auto _ : state) benchmark::DoNotOptimize(satqr::run_sweep(spec, p));
}
BENCHMARK(BM_LossSweep)->Unit(benchmark::kMicrosecond);

void BM_Crossover(benchmark::State& state) {
  const satqr::SystemParams p;
  for (auto _ : state) benchmark::DoNotOptimize(satqr::find_crossover(p, 15.0, 30.0));
}
BENCHMARK(BM_Crossover)->Unit(benchmark::kMicrosecond);

void BM_Simulate(benchmark::State& state) {
  satqr::TrialConfig cfg;
  cfg.n_emissions_per_pass = static_cast<std::uint64_t>(state.range(0));
  cfg.loss_db = 20.0;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(satqr::simulate_protocol(cfg));
    ++cfg.seed;
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
