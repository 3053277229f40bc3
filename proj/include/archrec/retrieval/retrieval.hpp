#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "archrec/core/symmetric_matrix.hpp"
#include "archrec/ingest/text.hpp"
#include "archrec/similarity/feature_matrix.hpp"

namespace archrec {

// Sparse word -> weight vector.
using TermVector = std::map<std::string, double>;

// The corpus idf of every vocabulary word; words outside it get ln(N).
class IdfTable {
 public:
  IdfTable() = default;
  explicit IdfTable(const FeatureMatrix& raw);

  double idf(const std::string& word) const;
  bool known(const std::string& word) const { return idf_.count(word) > 0; }
  std::size_t document_count() const { return n_; }

 private:
  std::map<std::string, double> idf_;
  std::size_t n_ = 0;
};

// Term frequency times idf over already normalized words.
TermVector weigh_terms(const TokenBag& words, const IdfTable& idf);

// Query text as an IR-token vector (tokenize, normalize, weigh).
TermVector text_to_vector(std::string_view text, const TextPipeline& pipeline, const IdfTable& idf);

// Query text as a class-name concept vector: lowercase tokenizer output, no stemming.
TermVector concept_vector(std::string_view text, const IdfTable& idf);

double cosine(const TermVector& a, const TermVector& b);
TermVector row_vector(const FeatureMatrix& m, std::size_t row);

// What a query is scored against: tf-idf rows of the IR-token and class-name matrices.
struct RetrievalIndex {
  FeatureMatrix text;         // C after tf-idf
  FeatureMatrix class_names;  // W_class after tf-idf
  IdfTable text_idf;
  IdfTable name_idf;
  TextPipeline pipeline;

  static RetrievalIndex build(const FeatureMatrix& text_raw, const FeatureMatrix& class_raw, TextPipeline pipeline);
};

struct ClusterVectors {
  std::vector<TermVector> text;
  std::vector<TermVector> names;
};

// Component-wise sums of the members' rows, per dense cluster id.
ClusterVectors cluster_vectors(const std::vector<int>& labels, const FeatureMatrix& text,
                               const FeatureMatrix& class_names);

struct ClusterMatch {
  int cluster = 0;
  double similarity = 0.0;

  bool operator==(const ClusterMatch&) const = default;
};

struct EntityMapping {
  std::string description;
  std::vector<ClusterMatch> clusters;  // similarity descending, then cluster id, all >= theta
  std::string diagnostic;              // set when the description has no usable words
};

// Similarity = mean of the cosines against the cluster text and name vectors.
std::vector<EntityMapping> map_entities(const std::vector<std::string>& descriptions, const ClusterVectors& clusters,
                                        const RetrievalIndex& index, double theta = 0.1);

class UnanswerableQuery : public std::runtime_error {
 public:
  UnanswerableQuery() : std::runtime_error("unanswerable query") {}
};

struct RankedClass {
  int entity = 0;
  double final_score = 0.0;  // alpha * vsm_rank + beta * centroid_rank, lower is better
  int vsm_rank = 0;
  int centroid_rank = 0;
  double vsm_score = 0.0;
  double centroid_score = 0.0;

  bool operator==(const RankedClass&) const = default;
};

struct QueryOptions {
  double alpha = 0.6;
  double beta = 0.4;
  int r = 0;  // VSM list length; 0 or more than d means all classes

  void validate() const;
};

// Ranks are 1-based; ties go to the lower entity id.
std::vector<int> rank_descending(const std::vector<double>& scores);

// VSM list, one propagation step of rank-weighted combined similarity, and
// rank fusion. Throws UnanswerableQuery when the query has no IR tokens.
std::vector<RankedClass> query_classes(std::string_view query, const RetrievalIndex& index,
                                       const SimilarityMatrix& combined, const QueryOptions& options = {});

// The fusion step alone, on precomputed per-class VSM scores.
std::vector<RankedClass> fuse_rankings(const std::vector<double>& vsm_scores, const SimilarityMatrix& combined,
                                       const QueryOptions& options);

}  // namespace archrec
