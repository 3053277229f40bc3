#include <benchmark/benchmark.h>

#include "archrec/clustering/partition.hpp"
#include "archrec/clustering/seeds.hpp"
#include "archrec/core/rng.hpp"
#include "archrec/similarity/similarity.hpp"

using namespace archrec;

namespace {

FeatureMatrix random_matrix(int rows, int vocabulary, int per_row) {
  Rng rng(1);
  std::vector<std::map<std::string, double>> data(rows);
  for (auto& r : data)
    for (int k = 0; k < per_row; ++k) r["t" + std::to_string(rng.uniform_int(0, vocabulary - 1))] += 1.0;
  return apply_tf_idf(FeatureMatrix::from_rows(data));
}

std::vector<NameSet> random_sets(int rows) {
  Rng rng(2);
  std::vector<NameSet> sets(rows);
  for (auto& s : sets)
    for (int k = 0; k < 4; ++k) s.insert("n" + std::to_string(rng.uniform_int(0, rows / 4)));
  return sets;
}

WeightedGraph random_graph(int n) {
  Rng rng(3);
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set(u, v, rng.uniform01() < 0.3 ? rng.uniform01() : 0.0);
  return g;
}

std::vector<int> random_labels(int n, int k) {
  Rng rng(4);
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng.uniform_int(0, k - 1));
  return labels;
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_PairwiseCosine(benchmark::State& state) {
  const FeatureMatrix m = random_matrix(static_cast<int>(state.range(0)), 2000, 40);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_cosine(m, exec_of(state)));
}

void BM_PairwiseMinMax(benchmark::State& state) {
  const FeatureMatrix m = random_matrix(static_cast<int>(state.range(0)), 500, 10);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_minmax(m, exec_of(state)));
}

void BM_PairwiseJaccard(benchmark::State& state) {
  const auto sets = random_sets(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_jaccard(sets, exec_of(state)));
}

void BM_AffinityMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedGraph g = random_graph(n);
  const Partition p(g, random_labels(n, 12));
  for (auto _ : state) benchmark::DoNotOptimize(p.affinity_matrix(exec_of(state)));
}

void BM_KMeans(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedGraph g = random_graph(n);
  for (auto _ : state) {
    Rng rng(5);
    benchmark::DoNotOptimize(kmeans_labels(g, 10, rng, 20, exec_of(state)));
  }
}

void BM_PartitionBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedGraph g = random_graph(n);
  const auto labels = random_labels(n, 12);
  for (auto _ : state) benchmark::DoNotOptimize(Partition(g, labels, exec_of(state)).mq());
}

void serial_and_parallel(benchmark::internal::Benchmark* b) {
  for (int n : {200, 800})
    for (int parallel : {0, 1}) b->Args({n, parallel});
  b->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_PairwiseCosine)->Apply(serial_and_parallel);
BENCHMARK(BM_PairwiseMinMax)->Apply(serial_and_parallel);
BENCHMARK(BM_PairwiseJaccard)->Apply(serial_and_parallel);
BENCHMARK(BM_AffinityMatrix)->Apply(serial_and_parallel);
BENCHMARK(BM_KMeans)->Apply(serial_and_parallel);
BENCHMARK(BM_PartitionBuild)->Apply(serial_and_parallel);

BENCHMARK_MAIN();
