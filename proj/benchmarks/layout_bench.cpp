#include <benchmark/benchmark.h>

#include "spreadline/export.hpp"
#include "spreadline/fixtures.hpp"
#include "spreadline/scene.hpp"

namespace {

using namespace spreadline;

fixtures::Dataset instance(benchmark::State& state) {
  fixtures::SyntheticParams p;
  p.entities = static_cast<int>(state.range(0));
  p.timestamps = static_cast<int>(state.range(1));
  return fixtures::synthetic(2024, p);
}

void BM_GenerateLayout(benchmark::State& state) {
  auto d = instance(state);
  d.config.focus = state.range(2) ? Focus::kStraightLine : Focus::kVerticalSpace;
  for (auto _ : state) benchmark::DoNotOptimize(generate_layout(d.events, d.attributes, d.config));
  state.SetLabel(std::string(to_string(d.config.focus)));
}
BENCHMARK(BM_GenerateLayout)
    ->ArgsProduct({{50, 200}, {10, 30}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_BarycenterSweep(benchmark::State& state) {
  const auto d = instance(state);
  const auto snapshots = build_snapshots(d.events, d.attributes, d.config);
  const auto initial = initialize_order(snapshots, d.attributes, false);
  for (auto _ : state) benchmark::DoNotOptimize(barycenter_sweep(initial));
}
BENCHMARK(BM_BarycenterSweep)->Args({200, 30})->Unit(benchmark::kMillisecond);

void BM_AlignTimelines(benchmark::State& state) {
  const auto d = instance(state);
  const auto snapshots = build_snapshots(d.events, d.attributes, d.config);
  const auto order = barycenter_sweep(initialize_order(snapshots, d.attributes, false));
  for (auto _ : state) benchmark::DoNotOptimize(align_timelines(order));
}
BENCHMARK(BM_AlignTimelines)->Args({200, 30})->Unit(benchmark::kMillisecond);

void BM_RenderSvg(benchmark::State& state) {
  const auto d = instance(state);
  const auto r = generate_layout(d.events, d.attributes, d.config);
  for (auto _ : state) benchmark::DoNotOptimize(export_svg(realize_geometry(r, d.attributes, d.config)));
}
BENCHMARK(BM_RenderSvg)->Args({200, 30})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
