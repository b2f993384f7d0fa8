#include <benchmark/benchmark.h>

#include "graphon/grid.hpp"
#include "graphon/kernels.hpp"
#include "graphon/sampler.hpp"

namespace {

using namespace graphon;

template <void (*Matmul)(const double*, const double*, double*, int)>
void BM_Matmul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridGraphon W = random_grid(n, 0.6, 0.3, 7);
  std::vector<double> out(W.w.size());
  for (auto _ : state) {
    Matmul(W.w.data(), W.w.data(), out.data(), n);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * n * n);
}
BENCHMARK_TEMPLATE(BM_Matmul, kernels::serial::matmul)->Arg(100)->Arg(200);
BENCHMARK_TEMPLATE(BM_Matmul, kernels::omp::matmul)->Arg(100)->Arg(200);

template <double (*EntropySum)(const double*, int)>
void BM_EntropySum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridGraphon W = random_grid(n, 0.6, 0.3, 7);
  for (auto _ : state) benchmark::DoNotOptimize(EntropySum(W.w.data(), n));
}
BENCHMARK_TEMPLATE(BM_EntropySum, kernels::serial::entropy_sum)->Arg(200);
BENCHMARK_TEMPLATE(BM_EntropySum, kernels::omp::entropy_sum)->Arg(200);

void BM_TriangleCount(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const bool serial = state.range(1) != 0;
  const SampledGraph G = sample_graph(BipodalGraphon::constant(0.5), n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(triangle_count(G, serial));
}
BENCHMARK(BM_TriangleCount)->Args({400, 1})->Args({400, 0})->Args({1500, 0});

void BM_SampleGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BipodalGraphon g{0.25, 0.75, 0.15, 0.85};
  for (auto _ : state) benchmark::DoNotOptimize(sample_graph(g, n, 11).rows.data());
}
BENCHMARK(BM_SampleGraph)->Arg(1500);

}  // namespace

BENCHMARK_MAIN();
