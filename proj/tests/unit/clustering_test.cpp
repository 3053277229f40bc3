#include <cmath>

#include <gtest/gtest.h>

#include "archrec/clustering/outliers.hpp"
#include "archrec/clustering/partition.hpp"
#include "archrec/clustering/search.hpp"
#include "archrec/clustering/seeds.hpp"
#include "oracles/partition_oracle.hpp"
#include "oracles/stats_oracle.hpp"
#include "test_support.hpp"

using namespace archrec;
using testing_support::random_graph;
using testing_support::random_labels;

namespace {

WeightedGraph four_node_fixture() {
  WeightedGraph g(4);
  g.set(0, 1, 1.0);
  g.set(2, 3, 1.0);
  g.set(1, 2, 0.5);
  return g;
}

WeightedGraph two_blocks(int a, int b, double intra = 1.0, double inter = 0.0) {
  WeightedGraph g(a + b);
  for (int u = 0; u < a + b; ++u)
    for (int v = u + 1; v < a + b; ++v) g.set(u, v, (u < a) == (v < a) ? intra : inter);
  return g;
}

}  // namespace

TEST(Quality, FourNodeFixture) {
  const WeightedGraph g = four_node_fixture();
  const QualityReport q = quality_of(g, {0, 0, 1, 1});
  EXPECT_NEAR(q.mq, 1.6, 1e-12);
  EXPECT_EQ(q.diff, 0);
  EXPECT_EQ(q.iso, 2);
  EXPECT_NEAR(q.mqc, 3.2, 1e-12);
  const oracle::Quality o = oracle::evaluate(g, {0, 0, 1, 1});
  EXPECT_NEAR(o.mq, 1.6, 1e-12);
  EXPECT_NEAR(o.mqc, 3.2, 1e-12);
}

TEST(Quality, DegenerateCases) {
  const WeightedGraph g = two_blocks(3, 3);
  EXPECT_NEAR(quality_of(g, {0, 0, 0, 1, 1, 1}).mq, 2.0, 1e-12);
  EXPECT_NEAR(quality_of(g, {0, 0, 0, 0, 0, 0}).mq, 1.0, 1e-12);
  EXPECT_EQ(quality_of(WeightedGraph(3), {0, 0, 0}).mq, 0.0);
  const QualityReport singles = quality_of(g, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(singles.iso, 6);
  EXPECT_EQ(singles.mqc, 0.0);
  const QualityReport equal = quality_of(g, {0, 0, 0, 1, 1, 1});
  EXPECT_NEAR(equal.mqc, 2 * equal.mq + 2, 1e-12);
}

TEST(Quality, MatchesOracleOnRandomPartitions) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const int n = static_cast<int>(rng.uniform_int(1, 30));
    const WeightedGraph g = random_graph(rng, n, 0.4);
    const auto labels = random_labels(rng, n, static_cast<int>(rng.uniform_int(1, n)));
    const QualityReport q = quality_of(g, labels);
    const oracle::Quality o = oracle::evaluate(g, labels);
    EXPECT_NEAR(q.mq, o.mq, 1e-9);
    EXPECT_NEAR(q.mqc, o.mqc, 1e-9);
    EXPECT_EQ(q.diff, o.diff);
    EXPECT_EQ(q.iso, o.iso);
    EXPECT_NEAR(mq(g, labels), reference::mq(g, labels), 1e-9);
  }
}

TEST(IncrementalMove, MatchesFullRecomputation) {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 50));
    const WeightedGraph g = random_graph(rng, n, 0.3);
    Partition p(g, random_labels(rng, n, static_cast<int>(rng.uniform_int(1, 6))));
    for (int k = 0; k < 5; ++k) {
      const int node = static_cast<int>(rng.uniform_int(0, n - 1));
      const auto slots = p.live_slots();
      const int to = rng.uniform01() < 0.2 ? kNewCluster : slots[rng.uniform_int(0, slots.size() - 1)];
      const Move m{node, p.cluster_of(node), to};
      if (!p.valid(m)) continue;
      const MoveEffect predicted = p.evaluate(m);
      p.apply(m);
      const oracle::Quality truth = oracle::evaluate(g, p.assignment());
      ASSERT_NEAR(predicted.mq, truth.mq, 1e-9);
      ASSERT_NEAR(predicted.mqc(), truth.mqc, 1e-9);
      ASSERT_NEAR(p.mq(), truth.mq, 1e-9);
      std::string why;
      ASSERT_TRUE(p.check_invariants(1e-9, &why)) << why;
    }
  }
}

TEST(IncrementalMove, MoveAndBackRestores) {
  Rng rng(8);
  const WeightedGraph g = random_graph(rng, 12);
  Partition p(g, random_labels(rng, 12, 3));
  const double before = p.mq();
  const int from = p.cluster_of(4);
  int to = -1;
  for (int s : p.live_slots())
    if (s != from) to = s;
  ASSERT_GE(to, 0);
  if (p.members(from).size() == 1) GTEST_SKIP();
  p.apply({4, from, to});
  p.apply({4, to, from});
  EXPECT_NEAR(p.mq(), before, 1e-9);
}

TEST(IncrementalMove, IsolatedNodeIsNeutral) {
  WeightedGraph g = two_blocks(3, 3);
  WeightedGraph h(7);
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) h.set(u, v, g(u, v));
  Partition p(h, {0, 0, 0, 1, 1, 1, 0});
  const double before = p.mq();
  EXPECT_NEAR(p.evaluate({6, p.cluster_of(6), p.cluster_of(3)}).mq, before, 1e-12);
}

TEST(IncrementalMove, ParallelAffinityMatchesReference) {
  Rng rng(13);
  const WeightedGraph g = random_graph(rng, 40, 0.5);
  const Partition p(g, random_labels(rng, 40, 5));
  const auto fast = p.affinity_matrix(Exec::Parallel);
  const auto slow = reference::affinity_matrix(p);
  ASSERT_EQ(fast.size(), slow.size());
  for (std::size_t i = 0; i < fast.size(); ++i)
    for (std::size_t j = 0; j < fast[i].size(); ++j) EXPECT_NEAR(fast[i][j], slow[i][j], 1e-12);
}

TEST(Annealing, AcceptanceFrequency) {
  Rng rng(21);
  AnnealingState s;
  s.temp = 1000;
  int accepted = 0;
  for (int i = 0; i < 10000; ++i) accepted += sn_accept(0.0, 693.1, s, rng) ? 1 : 0;
  EXPECT_NEAR(accepted / 10000.0, oracle::acceptance_probability(-693.1, 1000), 0.02);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(sn_accept(1.0, 1.0, s, rng));
    EXPECT_FALSE(sn_accept(2.0, 1.0, s, rng));
  }
  s.temp = 1e12;
  accepted = 0;
  for (int i = 0; i < 1000; ++i) accepted += sn_accept(0.5, 1.0, s, rng) ? 1 : 0;
  EXPECT_EQ(accepted, 1000);
}

TEST(Seeds, CliqueStrength) {
  WeightedGraph tri(3);
  tri.set(0, 1, 1);
  tri.set(1, 2, 1);
  tri.set(0, 2, 1);
  const auto top = top_edges(tri, 0);
  EXPECT_NEAR(clique_strength(1, top, tri), 1.0, 1e-12);

  WeightedGraph star(4);
  for (int v = 1; v < 4; ++v) star.set(0, v, 1);
  EXPECT_EQ(clique_strength(0, top_edges(star, 0), star), 0.0);
  WeightedGraph lone(3);
  lone.set(0, 1, 1);
  EXPECT_EQ(clique_strength(2, top_edges(lone, 0), lone), 0.0);
}

TEST(Seeds, ConnectedComponentsFindBlocks) {
  WeightedGraph g = two_blocks(4, 4, 1.0, 0.0);
  g.set(3, 4, 0.01);
  SeedContext ctx;
  ctx.graph = &g;
  Rng rng(1);
  const auto labels = Partition(g, generate_seed(SeedStrategy::CC, ctx, rng)).canonical_labels();
  EXPECT_EQ(labels, (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1}));
}

TEST(Seeds, PackagesAndNames) {
  WeightedGraph g(5);
  SeedContext ctx;
  ctx.graph = &g;
  ctx.packages = {"a", "b", "a", "c", "b"};
  Rng rng(1);
  const auto labels = Partition(g, generate_seed(SeedStrategy::Package, ctx, rng)).canonical_labels();
  EXPECT_EQ(labels, (std::vector<int>{0, 1, 0, 2, 1}));
  for (auto s : all_seed_strategies()) EXPECT_EQ(parse_seed(seed_name(s)), s);
  EXPECT_ANY_THROW(parse_seed("NOPE"));
}

TEST(Seeds, EveryStrategyCoversAllNodes) {
  Rng rng(17);
  const WeightedGraph g = random_graph(rng, 20, 0.4);
  SeedContext ctx;
  ctx.graph = &g;
  for (auto s : all_seed_strategies()) {
    Rng r(2);
    const auto labels = generate_seed(s, ctx, r);
    ASSERT_EQ(labels.size(), 20u) << seed_name(s);
    for (int l : labels) EXPECT_GE(l, 0) << seed_name(s);
  }
}

TEST(Initiation, Flags) {
  const WeightedGraph g = two_blocks(3, 3);
  const InitiationResult r = initiation_test(g, {{0, 0, 0, 1, 1, 1}, {0, 1, 2, 3, 4, 5}});
  EXPECT_TRUE(r.close_to_optimal[0]);
  EXPECT_FALSE(r.close_to_optimal[1]);
  EXPECT_EQ(r.marked, -1);  // density 6 of 15 pairs is not above half
  const InitiationResult empty = initiation_test(WeightedGraph(4), {{0, 0, 1, 1}});
  EXPECT_EQ(empty.density, 0.0);
  EXPECT_EQ(empty.marked, -1);
}

TEST(ClimbHill, AtOptimumStays) {
  Rng rng(31);
  const WeightedGraph g = random_graph(rng, 6);
  const oracle::Optimum best = oracle::brute_force_mqc(g);
  Partition p(g, best.labels);
  AnnealingState s;
  s.temp = 1e-300;
  Rng climb(1);
  climb_hill(p, s, climb);
  EXPECT_NEAR(quality_of(g, p.assignment()).mqc, best.quality.mqc, 1e-9);
}

TEST(ClimbHill, MisplacedNodeMovesBack) {
  WeightedGraph g = two_blocks(2, 3);
  g.set(4, 0, 0.0);
  const std::vector<int> start{0, 0, 1, 1, 0};  // node 4 belongs with 2 and 3
  Partition p(g, start);
  const double before = p.mq();
  AnnealingState s;
  Rng rng(1);
  const ClimbOutcome out = climb_hill(p, s, rng);
  EXPECT_TRUE(out.improved);
  EXPECT_GT(p.mq(), before);
  EXPECT_EQ(p.cluster_of(4), p.cluster_of(2));
  EXPECT_NEAR(p.mq(), mq(g, p.assignment()), 1e-9);
}

TEST(ClimbHill, TinyTemperatureNeverAcceptsWorse) {
  Rng gen(41);
  for (int t = 0; t < 100; ++t) {
    const WeightedGraph g = random_graph(gen, 8, 0.6);
    Partition p(g, random_labels(gen, 8, 3));
    AnnealingState s;
    s.temp = 1e-300;
    Rng rng(t);
    for (int i = 0; i < 20; ++i) EXPECT_FALSE(climb_hill(p, s, rng).sn_fired);
  }
}

TEST(Search, PlantedBlocksAndTrivialGraphs) {
  const WeightedGraph g = two_blocks(4, 4);
  SeedContext ctx;
  ctx.graph = &g;
  SearchConfig cfg;
  cfg.seed = 9;
  const SearchResult r = search(ctx, cfg);
  EXPECT_EQ(r.labels, (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1}));
  EXPECT_NEAR(r.quality.mqc, oracle::brute_force_mqc(g).quality.mqc, 1e-9);

  const WeightedGraph one(1);
  ctx.graph = &one;
  EXPECT_EQ(search(ctx, cfg).labels, std::vector<int>{0});
}

TEST(Search, DeterministicAndAudited) {
  Rng rng(51);
  const WeightedGraph g = random_graph(rng, 25, 0.5);
  SeedContext ctx;
  ctx.graph = &g;
  SearchConfig cfg;
  cfg.seed = 77;
  cfg.trace = true;
  cfg.audit_rate = 0.05;
  const SearchResult a = search(ctx, cfg);
  const SearchResult b = search(ctx, cfg);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.quality, b.quality);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(format_trace_line(a.trace[i]), format_trace_line(b.trace[i]));
  EXPECT_GT(a.audit.audits, 0u);
  EXPECT_EQ(a.audit.failures, 0u) << a.audit.first_failure;
  cfg.exec = Exec::Serial;
  EXPECT_EQ(search(ctx, cfg).labels, a.labels);
}

TEST(Skewness, AgainstTextbookFormula) {
  EXPECT_NEAR(skewness_g1({2, 4, 6}), 0.0, 1e-12);
  EXPECT_EQ(skewness_g1({3, 3, 3, 3}), 0.0);
  EXPECT_EQ(skewness_g1({1, 9}), 0.0);
  EXPECT_NEAR(skewness_g1({1, 1, 1, 10}), oracle::fisher_g1({1, 1, 1, 10}), 1e-9);
  EXPECT_NEAR(skewness_g1({1, 1, 1, 10}), 2.0, 1e-9);
  Rng rng(61);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> xs(rng.uniform_int(3, 20));
    for (auto& x : xs) x = static_cast<double>(rng.uniform_int(1, 30));
    EXPECT_NEAR(skewness_g1(xs), oracle::fisher_g1(xs), 1e-9);
  }
}

TEST(Outliers, PercentileSchedule) {
  EXPECT_EQ(next_percentile(75), 87);
  EXPECT_EQ(next_percentile(87), 93);
  EXPECT_EQ(next_percentile(93), 96);
  EXPECT_EQ(next_percentile(96), 97);
  EXPECT_EQ(next_percentile(98), 99);
}

TEST(Outliers, BalancedClustersUntouched) {
  WeightedGraph g(9);
  for (int b = 0; b < 3; ++b)
    for (int u = 3 * b; u < 3 * b + 3; ++u)
      for (int v = u + 1; v < 3 * b + 3; ++v) g.set(u, v, 1.0);
  SeedContext ctx;
  ctx.graph = &g;
  const OutlierResult r = eliminate_outliers(ctx);
  EXPECT_EQ(r.percentile, 75.0);
  EXPECT_EQ(r.splits, 0);
}

TEST(Outliers, MinimumCutSplitsBarbell) {
  WeightedGraph g(8);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) {
      g.set(u, v, 1.0);
      g.set(u + 4, v + 4, 1.0);
    }
  g.set(3, 4, 0.1);
  const MinCut cut = stoer_wagner(g, {0, 1, 2, 3, 4, 5, 6, 7});
  EXPECT_NEAR(cut.weight, 0.1, 1e-12);
  const bool left = cut.side == std::vector<int>{0, 1, 2, 3};
  const bool right = cut.side == std::vector<int>{4, 5, 6, 7};
  EXPECT_TRUE(left || right);
}
