#include <benchmark/benchmark.h>

#include "sessionscope/replay.hpp"
#include "sessionscope/rng.hpp"
#include "sessionscope/synth.hpp"

using namespace sessionscope;

namespace {

LoadedSet three_sessions() {
  std::vector<SessionLog> logs;
  const Scenario scenarios[] = {Scenario::Arena, Scenario::Patrol, Scenario::FpsDrill};
  for (std::uint64_t i = 0; i < 3; ++i) {
    ScenarioSpec spec;
    spec.scenario = scenarios[i];
    spec.seed = i;
    spec.duration = 120.0;
    spec.player_count = 2;
    logs.push_back(synthesize_session(spec));
  }
  return load_sessions(std::move(logs));
}

void BM_ResolveFrame(benchmark::State& state) {
  const LoadedSet set = three_sessions();
  FilterSet filters = FilterSet::all();
  if (state.range(0) == 0) filters.enabled.erase(FilterCategory::Trails);
  SplitMix64 rng(1);
  for (auto _ : state) {
    ReplayFrame f = resolve_frame(set, rng.uniform(0.0, set.duration_max), filters);
    benchmark::DoNotOptimize(f.objects.data());
  }
}
BENCHMARK(BM_ResolveFrame)->ArgName("trails")->Arg(0)->Arg(1);

void BM_ResolvePose(benchmark::State& state) {
  const LoadedSet set = three_sessions();
  const auto& stream = set.sessions[0].samples.begin()->second;
  SplitMix64 rng(2);
  for (auto _ : state) {
    Pose p = resolve_pose(stream, rng.uniform(0.0, set.duration_max));
    benchmark::DoNotOptimize(p.position.x);
  }
}
BENCHMARK(BM_ResolvePose);

}  // namespace
