#include <benchmark/benchmark.h>

#include "zfskit/zfskit.hpp"

using namespace zfs;

namespace {

OrbitalSet model(int spectators) {
  BiradicalModel m;
  m.separation = 5.0;
  m.spectator_pairs = spectators;
  m.contamination = 0.3;
  return build_biradical_model(m);
}

OrbitalSet gridded(int points) {
  GridGeometry g = cubic_cell(20.0, points);
  g.origin = Vector3(-10, -10, -7.5);
  return to_grid(model(1), g);
}

}  // namespace

static void AnalyticAssemble(benchmark::State& state) {
  const OrbitalSet set = model(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_d(set).d_total);
}
BENCHMARK(AnalyticAssemble)->Arg(0)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void DirectAssemble(benchmark::State& state) {
  const OrbitalSet set = gridded(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_d(set).d_total);
}
BENCHMARK(DirectAssemble)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

static void SpectralAssemble(benchmark::State& state) {
  const OrbitalSet set = gridded(static_cast<int>(state.range(0)));
  EngineConfig cfg;
  cfg.path = KernelPath::Spectral;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_d(set, cfg).d_total);
}
BENCHMARK(SpectralAssemble)->Arg(24)->Arg(48)->Unit(benchmark::kMillisecond);

static void AutoFlipDecontamination(benchmark::State& state) {
  const OrbitalSet set = model(2);
  for (auto _ : state) benchmark::DoNotOptimize(decontaminate_auto_flip(set).report.D_tilde);
}
BENCHMARK(AutoFlipDecontamination)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
