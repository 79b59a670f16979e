// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "coopmux/engine.hpp"
#include "coopmux/montecarlo.hpp"

namespace {

using namespace coopmux;

NetworkTopology bench_topology() {
  NetworkTopology t;
  t.source_antennas = 2;
  t.dest_antennas = 4;
  t.relays.push_back(RelaySpec::make(2, 2, 20.0));
  return t;
}

void BM_AdaptiveSweep(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const ProtocolSpec spec{Scheme::FixedAdaptive, bench_topology(), std::nullopt};
  const auto grid = snr_grid(0.0, 30.0, 10.0);
  const McOptions opts{2000, 7, workers};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(spec, {2.0, 8.0}, grid, opts));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opts.trials));
}
BENCHMARK(BM_AdaptiveSweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_MimoOutage(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const McOptions opts{20000, 3, workers};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_mimo_outage(4, 4, 100.0, 8.0, opts));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(opts.trials));
}
BENCHMARK(BM_MimoOutage)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
