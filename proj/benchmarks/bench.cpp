#include <benchmark/benchmark.h>

#include "beatlab/analytic.hpp"
#include "beatlab/demod.hpp"
#include "beatlab/spectral.hpp"
#include "beatlab/synth.hpp"

using namespace beatlab;

static void BM_Synthesize(benchmark::State& state) {
  synth::WaveBankConfig cfg;
  cfg.num_waves = cfg.field.count = static_cast<std::size_t>(state.range(0));
  const SamplingSpec spec(100.0, 100000);
  for (auto _ : state) benchmark::DoNotOptimize(synth::synthesize(cfg, spec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100000);
}
BENCHMARK(BM_Synthesize)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_Periodogram(benchmark::State& state) {
  synth::WaveBankConfig cfg;
  cfg.num_waves = cfg.field.count = 50;
  const auto x = demod::square(synth::synthesize(cfg, SamplingSpec(100.0, state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        spectral::periodogram(x, spectral::Window::Hann, spectral::Detrend::SubtractMean));
  }
}
BENCHMARK(BM_Periodogram)->Arg(1 << 16)->Arg(400000)->Unit(benchmark::kMillisecond);

static void BM_QPow(benchmark::State& state) {
  const analytic::PowerSyncParams p{1.0, 3.0, 1e-4, 1e5};
  double d = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic::q_pow(d, p));
    d = d < 1e3 ? d * 1.7 : 1e-3;
  }
}
BENCHMARK(BM_QPow)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
