#include <benchmark/benchmark.h>

#include "oransim/e2/codec.hpp"

namespace {

using namespace oransim;

e2::E2Message make_indication() {
  radio::MeasurementReport report;
  report.ue = 7;
  report.t = sim::SimTime{123456};
  report.serving = 2;
  report.entries = {{1, -81.5}, {2, -76.25}, {3, -90.125}};
  report.sinr_db = 4.75;
  report.cqi = 6;
  return e2::RicIndication{11, report};
}

void bench_encode(benchmark::State& state) {
  const auto msg = make_indication();
  for (auto _ : state) {
    auto bytes = e2::encode(msg);
    benchmark::DoNotOptimize(bytes.data());
  }
}
BENCHMARK(bench_encode);

void bench_decode(benchmark::State& state) {
  const auto bytes = e2::encode(make_indication());
  for (auto _ : state) {
    auto msg = e2::decode(bytes);
    benchmark::DoNotOptimize(&msg);
  }
}
BENCHMARK(bench_decode);

}  // namespace
