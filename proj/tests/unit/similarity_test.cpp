#include <cmath>

#include <gtest/gtest.h>

#include "archrec/core/error.hpp"
#include "archrec/similarity/features.hpp"
#include "archrec/similarity/similarity.hpp"
#include "test_support.hpp"

using namespace archrec;

TEST(TfIdf, HandValues) {
  std::vector<std::map<std::string, double>> rows(8);
  rows[0]["rare"] = 3;
  rows[1]["rare"] = 1;
  for (auto& r : rows) r["everywhere"] = 2;
  rows[2]["other"] = 1;
  const FeatureMatrix w = apply_tf_idf(FeatureMatrix::from_rows(rows));
  EXPECT_NEAR(w.at(0, w.column("rare")), 3 * std::log(4.0), 1e-12);
  EXPECT_NEAR(3 * std::log(4.0), 4.1589, 1e-4);
  for (std::size_t r = 0; r < 8; ++r) EXPECT_EQ(w.at(r, w.column("everywhere")), 0.0);
}

TEST(TfIdf, SingleEntitySingleToken) {
  const FeatureMatrix w = apply_tf_idf(FeatureMatrix::from_rows({{{"t", 1.0}}}));
  ASSERT_EQ(w.rows(), 1u);
  ASSERT_EQ(w.cols(), 1u);
  EXPECT_EQ(w.at(0, 0), 0.0);
}

TEST(Measures, HandValues) {
  const std::vector<double> a{1, 1, 0}, b{0, 1, 1};
  EXPECT_NEAR(cosine_similarity(a, b), 0.5, 1e-12);
  EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-12);
  const std::vector<double> c{1, 0, 0}, d{0, 0, 1};
  EXPECT_EQ(cosine_similarity(c, d), 0.0);
  const std::vector<double> e{2, 0, 1}, f{1, 1, 1};
  EXPECT_NEAR(minmax_similarity(e, f), 0.5, 1e-12);
  EXPECT_EQ(minmax_similarity(c, d), 0.0);
  EXPECT_EQ(minmax_similarity(e, e), 1.0);
  EXPECT_NEAR(jaccard_similarity({"a", "b", "c"}, {"b", "c", "d"}), 0.5, 1e-12);
  EXPECT_EQ(jaccard_similarity({"a"}, {"b"}), 0.0);
  EXPECT_EQ(jaccard_similarity({}, {}), 0.0);
}

namespace {

CodeEntity named(const std::string& name, std::set<std::string> parents = {}) {
  CodeEntity e;
  e.name = name;
  e.package = "p";
  e.inheritance_raw = std::move(parents);
  return e;
}

}  // namespace

TEST(Inheritance, ClosureAndSiblings) {
  const auto closed = inheritance_closure({named("X"), named("Y", {"X"}), named("Z", {"X"}), named("W")});
  EXPECT_EQ(closed[3], NameSet{"W"});
  EXPECT_TRUE(closed[1].count("X"));
  EXPECT_TRUE(closed[0].count("Y"));
  EXPECT_NEAR(jaccard_similarity(closed[1], closed[2]), 1.0 / 3.0, 1e-12);
}

TEST(Structural, HandTraces) {
  DependencyGraph g{3, {}};
  EXPECT_EQ(structural_similarity(g, {1, 1, 1}).total_weight(), 0.0);

  DependencyGraph twice{2, {{0, 1, {"m", {}, "void"}}, {0, 1, {"m", {}, "void"}}}};
  EXPECT_NEAR(structural_similarity(twice, {2, 1})(0, 1), 1.0, 1e-12);

  DependencyGraph fan{3, {{0, 2, {"m", {}, "void"}}, {1, 2, {"m", {}, "void"}}}};
  const auto s = structural_similarity(fan, {1, 1, 1});
  EXPECT_NEAR(s(0, 2), 1.0, 1e-12);
  EXPECT_NEAR(s(1, 2), 1.0, 1e-12);
  EXPECT_EQ(s(0, 1), 0.0);
}

TEST(Features, ClassNameRowsBeforeWeighting) {
  Corpus c = assemble_corpus({named("OrderManager"), named("Ledger")}, {}, {}, TextPipeline::java_default());
  const FeatureSet f = build_feature_matrices(c);
  EXPECT_EQ(f.class_raw.at(0, f.class_raw.column("order")), 1.0);
  EXPECT_EQ(f.class_raw.at(0, f.class_raw.column("manager")), 1.0);
  EXPECT_EQ(f.class_raw.at(1, f.class_raw.column("order")), 0.0);
}

TEST(Combined, FactorArithmetic) {
  FeatureSimilarities six;
  for (auto& m : six.delta) m = SimilarityMatrix(2);
  for (auto& m : six.delta) m.set(0, 1, 0.37);
  EXPECT_NEAR(combined_similarity({}, six)(0, 1), 0.37, 1e-12);

  for (auto& m : six.delta) m.set(0, 1, 0.0);
  six[Feature::Textual].set(0, 1, 1.0);
  EXPECT_NEAR(combined_similarity({}, six)(0, 1), 0.1, 1e-12);

  six[Feature::ClassName].set(0, 1, 1.0);
  SignificanceFactors half;
  half.alpha = {0.5, 0.5, 0, 0, 0, 0};
  EXPECT_NEAR(combined_similarity(half, six)(0, 1), 1.0, 1e-12);
}

TEST(Factors, Validation) {
  SignificanceFactors f;
  EXPECT_NO_THROW(f.validate());
  f.alpha = {0.1, 0.2, 0.1, 0.2, 0.2, 0.1};
  try {
    f.validate();
    FAIL() << "factors summing to 0.9 accepted";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("0.9"), std::string::npos) << e.what();
  }
  f.alpha = {1.2, -0.2, 0, 0, 0, 0};
  EXPECT_THROW(f.validate(), ConfigError);
  EXPECT_EQ(SignificanceFactors::from_json(SignificanceFactors{}.to_json()), SignificanceFactors{});
}

TEST(Factors, RichnessHeuristic) {
  RichnessStats uniform{{2, 2, 2, 2}, {1, 1, 1, 1}, {3, 3, 3, 3}};
  const SignificanceFactors same = suggest_significance_factors(uniform);
  for (std::size_t f = 0; f < kFeatureCount; ++f) EXPECT_NEAR(same.alpha[f], SignificanceFactors{}.alpha[f], 1e-12);

  // Mean 1, population sd sqrt(3): coefficient of variation above 1.
  RichnessStats skewed = uniform;
  skewed.textual = {0, 0, 0, 4};
  const SignificanceFactors s = suggest_significance_factors(skewed);
  EXPECT_NEAR(s[Feature::Textual], 0.05 / 0.95, 1e-9);
  EXPECT_NEAR(s[Feature::ClassName], 0.2 / 0.95, 1e-9);

  RichnessStats absent = uniform;
  absent.method_name = {0, 0, 0, 0};
  const SignificanceFactors z = suggest_significance_factors(absent);
  EXPECT_EQ(z[Feature::MethodName], 0.0);
  EXPECT_NEAR(z[Feature::Textual], 0.1 / 0.9, 1e-9);
  EXPECT_NO_THROW(z.validate());
}

TEST(Kernels, ParallelMatchesReference) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Corpus c = testing_support::random_corpus(rng, 25);
    const FeatureSet f = build_feature_matrices(c);
    auto close = [](const SimilarityMatrix& a, const SimilarityMatrix& b) {
      for (std::size_t i = 0; i < a.cells().size(); ++i)
        if (std::abs(a.cells()[i] - b.cells()[i]) > 1e-12) return false;
      return a.size() == b.size();
    };
    EXPECT_TRUE(close(pairwise_cosine(f.text, Exec::Parallel), reference::pairwise_cosine(f.text)));
    EXPECT_TRUE(close(pairwise_minmax(f.class_raw, Exec::Parallel), reference::pairwise_minmax(f.class_raw)));
    EXPECT_TRUE(close(pairwise_jaccard(f.inheritance, Exec::Parallel), reference::pairwise_jaccard(f.inheritance)));
    const FeatureSimilarities six = compute_similarities(f, c.dependencies);
    EXPECT_TRUE(close(combined_similarity({}, six, Exec::Parallel), reference::combined_similarity({}, six)));
  }
}

TEST(Kernels, RandomCorporaStayInRange) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Corpus c = testing_support::random_corpus(rng, 3 + trial);
    const FeatureSet f = build_feature_matrices(c);
    const FeatureSimilarities six = compute_similarities(f, c.dependencies);
    for (const auto& m : six.delta) {
      EXPECT_TRUE(m.is_symmetric());
      EXPECT_TRUE(m.within_unit_range());
    }
    EXPECT_TRUE(combined_similarity({}, six).within_unit_range());
  }
}

TEST(Bundle, TripletsRoundTrip) {
  SymmetricMatrix m(4);
  m.set(0, 3, 0.25);
  m.set(1, 2, 0.5);
  EXPECT_EQ(matrix_from_triplets(4, matrix_triplets(m)), m);
}
