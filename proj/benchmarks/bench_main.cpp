#include <benchmark/benchmark.h>

#include "cojump/noise.hpp"
#include "cojump/pipeline.hpp"
#include "cojump/simulator.hpp"

using namespace cojump;

namespace {

SimulatedPath path_for(const char* id) {
  ScenarioConfig c = table1_scenario(id).sim;
  c.seed = 1;
  return simulate(c);
}

}  // namespace

static void BM_Simulate(benchmark::State& state) {
  ScenarioConfig c = table1_scenario("I").sim;
  c.n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ++c.seed;
    benchmark::DoNotOptimize(simulate(c));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(30000)->Arg(300000)->Unit(benchmark::kMillisecond);

static void BM_SpectralStatistics(benchmark::State& state) {
  const SimulatedPath p = path_for("I");
  const ReturnSeries ret = returns(p.y);
  const BinGrid grid(ret.n(), 300);
  const auto j = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_statistics(ret, grid, j));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ret.n()) * state.range(0));
}
BENCHMARK(BM_SpectralStatistics)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Analyze(benchmark::State& state) {
  const char* id = state.range(0) == 0 ? "I" : "II";
  const SimulatedPath p = path_for(id);
  const AnalysisConfig cfg = analysis_config(table1_scenario(id).est);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p.y, cfg));
}
BENCHMARK(BM_Analyze)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
