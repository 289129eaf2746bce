#include <benchmark/benchmark.h>

#include <omp.h>

#include "pasplit/growth_pa.hpp"
#include "pasplit/growth_split.hpp"
#include "pasplit/parallel.hpp"
#include "pasplit/tree.hpp"

namespace {

using namespace pasplit;

constexpr std::size_t kTreeSize = 2000;
constexpr std::size_t kReplicas = 64;

double y_of_pa_tree(RandomStream& rng, std::size_t) {
  const Tree t = grow_linear_pa(kTreeSize, GrowthParams::make(1.0, 1.0), rng);
  return y_statistic(t);
}

void BM_ReplicasSerial(benchmark::State& state) {
  for (auto _ : state) {
    auto v = replicate_serial<double>(kReplicas, 1, y_of_pa_tree);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ReplicasSerial)->Unit(benchmark::kMillisecond);

void BM_ReplicasParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto v = replicate_parallel<double>(kReplicas, 1, jobs, y_of_pa_tree);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ReplicasParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_GrowFenwick(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(3, 0);
  for (auto _ : state) {
    Tree t = grow_linear_pa(n, GrowthParams::make(1.0, 1.0), rng);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_GrowFenwick)->Arg(1000)->Arg(10000);

void BM_GrowLinearScan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(3, 0);
  for (auto _ : state) {
    Tree t = grow_general_pa(n, [](std::size_t k) { return static_cast<double>(k) + 1.0; }, rng);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_GrowLinearScan)->Arg(1000)->Arg(10000);

void BM_GrowSplitGem(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream rng(5, 0);
  const SplitSpec spec = GrowthParams::make(1.0, 1.0).gem();
  for (auto _ : state) {
    Tree t = grow_split(n, spec, rng);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_GrowSplitGem)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
