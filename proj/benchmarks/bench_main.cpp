#include <benchmark/benchmark.h>

#include "aoi/analytic.hpp"
#include "aoi/oracle.hpp"
#include "aoi/simulator.hpp"

namespace {

aoi::SystemConfig bench_config(aoi::Scheme scheme, aoi::GenerationModel model, std::int64_t frames) {
  aoi::SystemConfig c;
  c.users = 8;
  c.slot = 0.5;
  c.rate = 1.0;
  c.scheme = scheme;
  c.model = model;
  c.frames = frames;
  c.warmup_frames = 100;
  c.seed = 7;
  return c;
}

void BM_GainDraw(benchmark::State& state) {
  aoi::GainStream stream(42);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::draw_gain(stream).value);
}
BENCHMARK(BM_GainDraw);

void BM_Simulate(benchmark::State& state) {
  const auto scheme = state.range(0) == 0 ? aoi::Scheme::tdma : aoi::Scheme::cr_noma;
  const auto model = state.range(1) == 0 ? aoi::GenerationModel::gaw : aoi::GenerationModel::gar;
  const auto config = bench_config(scheme, model, 20000);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::sim::run(config).overall_aoi);
  state.SetItemsProcessed(state.iterations() * config.frames);
}
BENCHMARK(BM_Simulate)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GarPartitionEstimate(benchmark::State& state) {
  aoi::GainStream stream(3);
  const auto eps = aoi::epsilon_of(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aoi::oracle::estimate_gar_partitions(eps, 1.0, 1.0, 100000, stream));
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_GarPartitionEstimate)->Unit(benchmark::kMillisecond);

void BM_AnalyticGarOverall(benchmark::State& state) {
  const auto eps = aoi::epsilon_of(1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(aoi::analytic::crnoma_gar_overall(16, 0.5, eps, 10.0, 10.0));
}
BENCHMARK(BM_AnalyticGarOverall);

}  // namespace
BENCHMARK_MAIN();
