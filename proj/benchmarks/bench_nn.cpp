#include <benchmark/benchmark.h>

#include "oransim/nn/layers.hpp"
#include "oransim/nn/mat.hpp"
#include "oransim/sim/rng.hpp"

namespace {

using namespace oransim;

nn::Mat random_mat(int rows, int cols, sim::RngStream& rng) {
  nn::Mat m(rows, cols);
  for (auto& v : m.a) v = rng.uniform(-1.0, 1.0);
  return m;
}

void bench_gemm_nn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  sim::RngStream rng("bench/gemm", 1);
  const nn::Mat a = random_mat(n, n, rng);
  const nn::Mat b = random_mat(n, n, rng);
  nn::Mat c(n, n);
  for (auto _ : state) {
    c.zero();
    nn::gemm_nn(a, b, c);
    benchmark::DoNotOptimize(c.a.data());
  }
  state.SetItemsProcessed(state.iterations() * 2LL * n * n * n);
}
BENCHMARK(bench_gemm_nn)->Arg(32)->Arg(128);

void bench_gru_forward(benchmark::State& state) {
  sim::RngStream rng("bench/gru", 1);
  nn::GruLayer layer(1, 128);
  sim::RngStream init("nn/init", 1);
  layer.init(init);
  std::vector<nn::Mat> xs;
  for (int t = 0; t < 15; ++t) xs.push_back(random_mat(16, 1, rng));
  std::vector<nn::Mat> ys;
  for (auto _ : state) {
    layer.forward(xs, ys, false, nullptr);
    benchmark::DoNotOptimize(ys.back().a.data());
  }
}
BENCHMARK(bench_gru_forward);

}  // namespace
