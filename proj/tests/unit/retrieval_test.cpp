#include <cmath>

#include <gtest/gtest.h>

#include "archrec/core/error.hpp"
#include "archrec/retrieval/retrieval.hpp"
#include "oracles/retrieval_oracle.hpp"
#include "test_support.hpp"

using namespace archrec;

namespace {

// Three classes, hand-built counts and weights.
struct QueryFixture {
  oracle::RetrievalCase oracle_case;
  RetrievalIndex index;
  SimilarityMatrix combined{3};

  QueryFixture() {
    auto& c = oracle_case;
    c.text_vocab = {"job", "order", "process", "queue", "schedul"};
    c.text_counts = {{1, 0, 1, 0, 2}, {0, 0, 2, 2, 0}, {0, 3, 0, 1, 0}};
    c.name_vocab = {"book", "job", "order", "process", "queue", "schedule"};
    c.name_counts = {{0, 1, 0, 0, 0, 1}, {0, 0, 0, 1, 1, 0}, {1, 0, 1, 0, 0, 0}};
    c.query_text_words = {"schedul", "process"};
    c.query_name_words = {"schedule", "processes"};
    c.weights = {{0, 0.5, 0.1}, {0.5, 0, 0.8}, {0.1, 0.8, 0}};
    std::vector<std::map<std::string, double>> text(3), names(3);
    for (int i = 0; i < 3; ++i) {
      for (std::size_t t = 0; t < c.text_vocab.size(); ++t)
        if (c.text_counts[i][t] > 0) text[i][c.text_vocab[t]] = c.text_counts[i][t];
      for (std::size_t t = 0; t < c.name_vocab.size(); ++t)
        if (c.name_counts[i][t] > 0) names[i][c.name_vocab[t]] = c.name_counts[i][t];
    }
    index = RetrievalIndex::build(FeatureMatrix::from_rows(text), FeatureMatrix::from_rows(names),
                                  TextPipeline::java_default());
    combined.set(0, 1, 0.5);
    combined.set(0, 2, 0.1);
    combined.set(1, 2, 0.8);
  }
};

}  // namespace

TEST(QueryVector, IdfOfKnownAndUnknownWords) {
  std::vector<std::map<std::string, double>> rows(100);
  for (auto& r : rows) r["job"] = 1;
  const IdfTable idf(FeatureMatrix::from_rows(rows));
  const TextPipeline p = TextPipeline::java_default();
  const TermVector v = text_to_vector("job zebra", p, idf);
  EXPECT_EQ(v.at("job"), 0.0);
  EXPECT_NEAR(v.at("zebra"), std::log(100.0), 1e-12);
  EXPECT_NEAR(std::log(100.0), 4.6052, 1e-4);
  EXPECT_TRUE(text_to_vector("", p, idf).empty());
}

TEST(ClusterVectors, SumsOfRows) {
  const FeatureMatrix text = FeatureMatrix::from_rows({{{"a", 1}}, {{"a", 2}, {"b", 1}}, {}});
  const FeatureMatrix names = FeatureMatrix::from_rows({{{"x", 1}}, {}, {}});
  const ClusterVectors v = cluster_vectors({0, 0, 1}, text, names);
  EXPECT_EQ(v.text[0], (TermVector{{"a", 3}, {"b", 1}}));
  EXPECT_EQ(v.names[0], (TermVector{{"x", 1}}));
  EXPECT_TRUE(v.text[1].empty());
  const ClusterVectors single = cluster_vectors({0, 1, 2}, text, names);
  EXPECT_EQ(single.text[1], row_vector(text, 1));
}

TEST(MapEntities, OrderingThresholdAndDiagnostics) {
  const QueryFixture f;
  const ClusterVectors v = cluster_vectors({0, 1, 2}, f.index.text, f.index.class_names);
  const auto m = map_entities({"schedule job", "the", "order book"}, v, f.index, 0.0);
  ASSERT_EQ(m.size(), 3u);
  ASSERT_FALSE(m[0].clusters.empty());
  EXPECT_EQ(m[0].clusters[0].cluster, 0);
  for (std::size_t i = 1; i < m[0].clusters.size(); ++i)
    EXPECT_GE(m[0].clusters[i - 1].similarity, m[0].clusters[i].similarity);
  EXPECT_FALSE(m[1].diagnostic.empty());
  EXPECT_TRUE(m[1].clusters.empty());
  EXPECT_EQ(m[2].clusters[0].cluster, 2);
  for (const auto& e : map_entities({"schedule job"}, v, f.index, 1.01)) EXPECT_TRUE(e.clusters.empty());
  const auto strict = map_entities({"order book"}, v, f.index, 1e-9);
  for (const auto& c : strict[0].clusters) EXPECT_NE(c.cluster, 0);
}

TEST(Fusion, DegenerateAndAgreeingLists) {
  SimilarityMatrix w(4);
  w.set(0, 1, 0.9);
  w.set(2, 3, 0.3);
  const std::vector<double> vsm{0.1, 0.7, 0.4, 0.2};
  const auto pure = fuse_rankings(vsm, w, {1.0, 0.0, 0});
  std::vector<int> order;
  for (const auto& r : pure) order.push_back(r.entity);
  EXPECT_EQ(order, (std::vector<int>{1, 2, 3, 0}));

  SimilarityMatrix star(4);
  for (int v = 1; v < 4; ++v) star.set(0, v, 1.0);
  const auto agree = fuse_rankings({0.9, 0.3, 0.2, 0.1}, star, {});
  EXPECT_EQ(agree[0].entity, 0);
  EXPECT_EQ(agree[0].vsm_rank, 1);
  EXPECT_EQ(agree[0].centroid_rank, 1);
  EXPECT_NEAR(agree[0].final_score, 1.0, 1e-12);
}

TEST(Fusion, InvariantUnderMonotoneRescaling) {
  Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const int n = static_cast<int>(rng.uniform_int(2, 12));
    const SimilarityMatrix w = testing_support::random_graph(rng, n);
    std::vector<double> vsm(n), squashed(n);
    for (int i = 0; i < n; ++i) {
      vsm[i] = rng.uniform01();
      squashed[i] = std::sqrt(vsm[i]) * 3 + 1;
    }
    const auto a = fuse_rankings(vsm, w, {});
    const auto b = fuse_rankings(squashed, w, {});
    ASSERT_EQ(a.size(), b.size());
    std::set<int> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].entity, b[i].entity);
      EXPECT_EQ(a[i].vsm_rank, b[i].vsm_rank);
      seen.insert(a[i].entity);
    }
    EXPECT_EQ(seen.size(), a.size());
  }
}

TEST(Fusion, OptionsValidated) {
  EXPECT_THROW((QueryOptions{0.7, 0.4, 0}.validate()), ConfigError);
  EXPECT_THROW((QueryOptions{1.2, -0.2, 0}.validate()), ConfigError);
  EXPECT_NO_THROW((QueryOptions{0.0, 1.0, 0}.validate()));
}

TEST(Query, ThreeClassFixtureMatchesOracle) {
  const QueryFixture f;
  const auto expected = oracle::rank_query(f.oracle_case);
  const auto got = query_classes("schedule processes", f.index, f.combined);
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].entity, expected[i].cls);
    EXPECT_EQ(got[i].vsm_rank, expected[i].vsm_rank);
    EXPECT_EQ(got[i].centroid_rank, expected[i].centroid_rank);
    EXPECT_NEAR(got[i].vsm_score, expected[i].vsm_score, 1e-12);
    EXPECT_NEAR(got[i].centroid_score, expected[i].centroid_score, 1e-12);
    EXPECT_NEAR(got[i].final_score, expected[i].final_score, 1e-12);
  }
}

TEST(Query, UnanswerableWithoutUsableWords) {
  const QueryFixture f;
  EXPECT_THROW(query_classes("", f.index, f.combined), UnanswerableQuery);
  EXPECT_THROW(query_classes("the of and", f.index, f.combined), UnanswerableQuery);
}
