#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "archrec/core/exec.hpp"
#include "archrec/core/symmetric_matrix.hpp"
#include "archrec/ingest/dependency.hpp"
#include "archrec/similarity/features.hpp"

namespace archrec {

// Vector-level measures.
double cosine_similarity(std::span<const double> u, std::span<const double> v);
// Both vectors all-zero -> 1.
double minmax_similarity(std::span<const double> u, std::span<const double> v);
// Both sets empty -> 0.
double jaccard_similarity(const NameSet& a, const NameSet& b);

// Pairwise matrices over matrix rows / per-entity sets. For min/max an
// all-zero pair of rows yields 0 off the diagonal.
SimilarityMatrix pairwise_cosine(const FeatureMatrix& m, Exec exec = Exec::Parallel);
SimilarityMatrix pairwise_minmax(const FeatureMatrix& m, Exec exec = Exec::Parallel);
SimilarityMatrix pairwise_jaccard(const std::vector<NameSet>& sets, Exec exec = Exec::Parallel);

// Collapse same-method edges, split each (callee, method) credit over its
// callers, sum both directions per pair, divide by the pair's public-method
// count and finally by the largest pair weight.
SimilarityMatrix structural_similarity(const DependencyGraph& g, const std::vector<int>& public_method_counts);

enum class Feature { Textual, ClassName, MethodName, Packaging, Inheritance, Structural };
inline constexpr std::size_t kFeatureCount = 6;
std::string feature_name(Feature f);

struct SignificanceFactors {
  std::array<double, kFeatureCount> alpha{0.1, 0.2, 0.1, 0.2, 0.2, 0.2};

  double operator[](Feature f) const { return alpha[static_cast<std::size_t>(f)]; }
  double& operator[](Feature f) { return alpha[static_cast<std::size_t>(f)]; }

  // Each factor in [0, 1] and the sum equal to 1 within 1e-9; throws ConfigError
  // quoting the offending values otherwise.
  void validate() const;
  std::string describe() const;

  nlohmann::json to_json() const;
  static SignificanceFactors from_json(const nlohmann::json& j);

  bool operator==(const SignificanceFactors&) const = default;
};

struct FeatureSimilarities {
  std::array<SimilarityMatrix, kFeatureCount> delta;

  const SimilarityMatrix& operator[](Feature f) const { return delta[static_cast<std::size_t>(f)]; }
  SimilarityMatrix& operator[](Feature f) { return delta[static_cast<std::size_t>(f)]; }
  std::size_t size() const { return delta[0].size(); }
};

FeatureSimilarities compute_similarities(const FeatureSet& features, const DependencyGraph& g,
                                         Exec exec = Exec::Parallel);

// weight(i, j) = sum over features of alpha_f * delta_f(i, j).
WeightedGraph combined_similarity(const SignificanceFactors& factors, const FeatureSimilarities& six,
                                  Exec exec = Exec::Parallel);

// Per-entity richness of the three semantic features.
struct RichnessStats {
  std::vector<double> textual;
  std::vector<double> class_name;
  std::vector<double> method_name;
};

RichnessStats richness_of(const FeatureSet& features);

// Starts from the defaults; a semantic feature whose richness has a coefficient
// of variation above 1.0 gets its factor halved, an all-zero feature gets 0;
// the result is renormalized to sum 1.
SignificanceFactors suggest_significance_factors(const RichnessStats& stats);

// Sparse triplets (i < j, value > 0) per feature, the factors and the combined weights.
nlohmann::json similarity_bundle(const FeatureSimilarities& six, const SignificanceFactors& factors,
                                 const WeightedGraph& combined);
nlohmann::json matrix_triplets(const SymmetricMatrix& m);
SymmetricMatrix matrix_from_triplets(std::size_t n, const nlohmann::json& triplets);

// Definitional, dense and single-threaded versions of the kernels above.
namespace reference {
SimilarityMatrix pairwise_cosine(const FeatureMatrix& m);
SimilarityMatrix pairwise_minmax(const FeatureMatrix& m);
SimilarityMatrix pairwise_jaccard(const std::vector<NameSet>& sets);
WeightedGraph combined_similarity(const SignificanceFactors& factors, const FeatureSimilarities& six);
}  // namespace reference

}  // namespace archrec
