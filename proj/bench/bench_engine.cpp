// Serial reference vs OpenMP kernels on a synthetic corpus.
//
//   ./build/bench/distwsd_bench --benchmark_filter=Disambiguate

#include <benchmark/benchmark.h>
#include <omp.h>

#include "distwsd/engine.hpp"
#include "distwsd/triple_index.hpp"
#include "synthetic.hpp"

namespace {

using namespace distwsd;

const std::vector<Sentence>& bench_corpus() {
  static const auto c = synthetic::corpus(4000, 7);
  return c;
}

const TripleIndex& bench_index() {
  static const auto ix = build_index_serial(bench_corpus());
  return ix;
}

const SenseInventory& bench_inventory() {
  static const auto inv = synthetic::inventory(11);
  return inv;
}

void BM_BuildIndexSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_index_serial(bench_corpus()));
}

void BM_BuildIndexParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_index(bench_corpus(), {}, static_cast<int>(state.range(0))));
  }
}

EngineConfig bench_config() {
  EngineConfig cfg;
  cfg.k = 4;
  cfg.strategy = NeighborStrategy::distributional(Measure::Lin);
  return cfg;
}

void BM_DisambiguateSerial(benchmark::State& state) {
  const Resources res{bench_inventory(), &bench_index(), nullptr};
  for (auto _ : state) {
    benchmark::DoNotOptimize(disambiguate_corpus_serial(bench_corpus(), res, bench_config()));
  }
}

void BM_DisambiguateParallel(benchmark::State& state) {
  const Resources res{bench_inventory(), &bench_index(), nullptr};
  for (auto _ : state) {
    benchmark::DoNotOptimize(disambiguate_corpus(bench_corpus(), res, bench_config(),
                                                 static_cast<int>(state.range(0))));
  }
}

void thread_counts(benchmark::internal::Benchmark* b) {
  for (int t = 1; t <= omp_get_max_threads(); t *= 2) b->Arg(t);
}

}  // namespace

BENCHMARK(BM_BuildIndexSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildIndexParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisambiguateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DisambiguateParallel)->Apply(thread_counts)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
