#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sessionscope/coverage.hpp"
#include "sessionscope/frustum.hpp"
#include "sessionscope/heatmap.hpp"
#include "sessionscope/rng.hpp"
#include "sessionscope/synth.hpp"

using namespace sessionscope;

namespace {

std::vector<Vec3> random_points(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Vec3> out(n);
  for (auto& p : out) p = {rng.uniform(-20, 20), rng.uniform(0, 2), rng.uniform(-20, 20)};
  return out;
}

void BM_Binning(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 3);
  const GridSpec spec = derive_grid_spec(points, 0.1);
  for (auto _ : state) {
    DensityGrid g = accumulate_density(points, spec);
    benchmark::DoNotOptimize(g.max_count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Binning)->Arg(10'000)->Arg(1'000'000);

void BM_Colorize(benchmark::State& state) {
  const auto points = random_points(200'000, 4);
  const DensityGrid g = accumulate_density(points, derive_grid_spec(points, 0.1));
  for (auto _ : state) {
    RgbaImage img = colorize(g, state.range(0) != 0);
    benchmark::DoNotOptimize(img.pixels.data());
  }
}
BENCHMARK(BM_Colorize)->ArgName("log")->Arg(0)->Arg(1);

void BM_FrustumBuild(benchmark::State& state) {
  const Pose pose{{1, 2, 3}, from_yaw_pitch(0.7, -0.2)};
  const CameraParams params{1.0, 16.0 / 9.0, 0.1, 50.0};
  for (auto _ : state) {
    Frustum f = build_frustum(pose, params);
    benchmark::DoNotOptimize(f.planes.data());
  }
}
BENCHMARK(BM_FrustumBuild);

void BM_FrustumContains(benchmark::State& state) {
  const Frustum f = build_frustum({{0, 1, 0}, from_yaw_pitch(0.3, 0.0)}, {1.0, 16.0 / 9.0, 0.1, 15.0});
  const auto points = random_points(4096, 5);
  std::size_t i = 0, hits = 0;
  for (auto _ : state) {
    hits += frustum_contains(f, points[i++ & 4095]) ? 1 : 0;
  }
  benchmark::DoNotOptimize(hits);
}
BENCHMARK(BM_FrustumContains);

void BM_Coverage(benchmark::State& state) {
  ScenarioSpec spec;
  spec.duration = 60.0;
  const SessionLog log = synthesize_session(spec);
  const auto& stream = log.samples.at("camera_0");
  const CameraParams& params = log.camera_params.at("camera_0");
  GridSpec g;
  g.origin_x = g.origin_z = -5.0;
  g.cell_size = 10.0 / static_cast<double>(state.range(0));
  g.cols = g.rows = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CoverageGrid c = compute_coverage(stream, params, g);
    benchmark::DoNotOptimize(c.seen_count());
  }
}
BENCHMARK(BM_Coverage)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
