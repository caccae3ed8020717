#include <benchmark/benchmark.h>

#include "sessionscope/log_store.hpp"
#include "sessionscope/synth.hpp"

using namespace sessionscope;

namespace {

SessionLog session(double duration, int players) {
  ScenarioSpec spec;
  spec.scenario = Scenario::FpsDrill;
  spec.seed = 7;
  spec.duration = duration;
  spec.player_count = players;
  return synthesize_session(spec);
}

void BM_Write(benchmark::State& state) {
  const SessionLog log = session(static_cast<double>(state.range(0)), 2);
  std::size_t bytes = 0;
  for (auto _ : state) {
    const std::string text = write_session_string(log);
    bytes = text.size();
    benchmark::DoNotOptimize(text.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_Write)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Parse(benchmark::State& state) {
  const std::string text = write_session_string(session(static_cast<double>(state.range(0)), 2));
  for (auto _ : state) {
    SessionLog log = parse_session_string(text);
    benchmark::DoNotOptimize(log.duration);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  for (auto _ : state) {
    SessionLog log = session(60.0, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(log.duration);
  }
}
BENCHMARK(BM_Synthesize)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
