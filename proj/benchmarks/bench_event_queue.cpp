#include <benchmark/benchmark.h>

#include "oransim/sim/event_queue.hpp"

namespace {

using namespace oransim;

void bench_schedule_dispatch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    sim::EventQueue queue;
    long long acc = 0;
    for (int i = 0; i < n; ++i) {
      queue.schedule(sim::SimTime{(i * 7) % 1000}, [&acc, i] { acc += i; });
    }
    queue.run_until(sim::SimTime{1000});
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bench_schedule_dispatch)->Arg(1000)->Arg(10000);

}  // namespace
