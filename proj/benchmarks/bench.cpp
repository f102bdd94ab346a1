#include <benchmark/benchmark.h>

#include "srsim/channel.hpp"
#include "srsim/engine.hpp"
#include "srsim/rng.hpp"
#include "srsim/sweep.hpp"

namespace {

void BM_PathLoss(benchmark::State& state) {
  srsim::ChannelModelParams p;
  double d = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(srsim::path_loss_db(d, p));
    d = d < 100.0 ? d + 0.37 : 0.5;
  }
}
BENCHMARK(BM_PathLoss);

void BM_SinrAggregation(benchmark::State& state) {
  const std::vector<double> interferers(static_cast<std::size_t>(state.range(0)), -78.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(srsim::sinr_db(-62.0, interferers, -95.0));
}
BENCHMARK(BM_SinrAggregation)->Arg(1)->Arg(4)->Arg(16);

void BM_EventQueueScheduleDispatch(benchmark::State& state) {
  srsim::RngStream rng(7, 0);
  for (auto _ : state) {
    srsim::EventQueue q;
    for (int i = 0; i < 1000; ++i)
      q.schedule(static_cast<srsim::TimeNs>(rng.uniform_int(1000000)),
                 {srsim::EventKind::kSlotTick, 0, 0, 0});
    std::size_t n = 0;
    q.run_until(2000000, [&](srsim::TimeNs, const srsim::Event&) {
      ++n;
      return true;
    });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EventQueueScheduleDispatch);

void BM_ScenarioRun(benchmark::State& state) {
  srsim::SweepSpec spec;
  spec.n_wlans = static_cast<int>(state.range(0));
  spec.sim_time_s = 0.25;
  const srsim::SimulationConfig cfg =
      srsim::cell_config(spec, 25.0, 1, -72.0, 50.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(srsim::run_scenario(cfg));
  }
}
BENCHMARK(BM_ScenarioRun)->Arg(2)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
