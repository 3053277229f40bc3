#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "archrec/core/symmetric_matrix.hpp"
#include "archrec/ingest/dependency.hpp"
#include "archrec/ingest/entity.hpp"
#include "archrec/ingest/scoping.hpp"
#include "archrec/similarity/feature_matrix.hpp"

namespace archrec {

// Cluster labels are dense ids 0..k-1, one per entity.
int cluster_count(const std::vector<int>& labels);
std::vector<std::vector<int>> cluster_members(const std::vector<int>& labels);

// A public method of `owner` (an entity id).
struct MethodRef {
  int owner = 0;
  MethodSignature method;

  bool operator==(const MethodRef&) const = default;
  auto operator<=>(const MethodRef&) const = default;
};

struct ClusterInterface {
  int cluster = 0;
  std::vector<MethodRef> methods;  // sorted, unique

  bool operator==(const ClusterInterface&) const = default;
};

// Methods of each cluster's members that some class of another cluster calls.
std::vector<ClusterInterface> compute_interfaces(const std::vector<int>& labels, const DependencyGraph& g);

// provider -> consumer: methods of provider's members called by consumer's members.
struct InteractionEdge {
  int provider = 0;
  int consumer = 0;
  std::vector<MethodRef> methods;  // sorted, unique, never empty

  bool operator==(const InteractionEdge&) const = default;
};

struct InteractionGraph {
  int cluster_count = 0;
  std::vector<InteractionEdge> edges;  // sorted by (provider, consumer)

  bool operator==(const InteractionGraph&) const = default;
};

InteractionGraph compute_interactions(const std::vector<int>& labels, const DependencyGraph& g);

struct ScoredConcept {
  std::string word;
  double score = 0.0;

  bool operator==(const ScoredConcept&) const = default;
};

struct ClusterLabel {
  int cluster = 0;
  std::vector<ScoredConcept> concepts;  // score descending, then word ascending
  int centroid = -1;
  bool raw_frequency = false;  // no member concept had tf-idf weight

  bool operator==(const ClusterLabel&) const = default;
};

// Top-k class-name concepts per cluster by summed tf-idf weight, falling back to
// raw counts when every member weight is zero. The centroid maximizes summed
// combined weight to co-members (lowest id on ties).
std::vector<ClusterLabel> auto_label(const std::vector<int>& labels, const FeatureMatrix& weighted,
                                     const FeatureMatrix& raw, const SimilarityMatrix& combined, int k = 5);

int centroid_of(const std::vector<int>& members, const SimilarityMatrix& combined);

struct BorderlineEntry {
  int entity = 0;
  int home_cluster = 0;
  int foreign_cluster = 0;
  int foreign_entity = 0;
  double foreign_similarity = 0.0;
  double home_similarity = 0.0;

  bool operator==(const BorderlineEntry&) const = default;
};

struct BorderlineReport {
  double tau = 0.9;
  std::vector<BorderlineEntry> entries;  // entity ascending

  bool operator==(const BorderlineReport&) const = default;
};

// Entities whose strongest foreign edge reaches tau times their strongest home edge.
BorderlineReport borderline_classes(const std::vector<int>& labels, const SimilarityMatrix& combined,
                                    double tau = 0.9);

// 1..5 for (0,0.2], (0.2,0.4], ..., (0.8,1]; 0 means no edge is drawn.
int bucket_edge(double w);

struct BucketedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
  int bucket = 0;

  bool operator==(const BucketedEdge&) const = default;
};

// Positive-weight pairs inside each cluster, u < v, in (u, v) order.
std::vector<BucketedEdge> intra_cluster_edges(const std::vector<int>& labels, const SimilarityMatrix& combined);

// Mean entity-level weight over the cross pairs of two disjoint member lists.
double cluster_pair_similarity(const std::vector<int>& a, const std::vector<int>& b, const SimilarityMatrix& g);

// Clusters as nodes, weighted by cluster_pair_similarity.
WeightedGraph cluster_graph(const std::vector<std::vector<int>>& clusters, const SimilarityMatrix& g);

// Per cluster, the scoped-out classes its members call, by layer.
using LayerUsage = std::map<Layer, std::set<std::string>>;
std::vector<LayerUsage> cross_layer_usage(const std::vector<int>& labels, const std::vector<SideEdge>& side);

}  // namespace archrec
