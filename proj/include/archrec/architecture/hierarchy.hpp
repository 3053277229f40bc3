#pragma once

#include <vector>

#include "archrec/clustering/search.hpp"
#include "archrec/core/symmetric_matrix.hpp"

namespace archrec {

// labels[i] is the level-L cluster of level-(L-1) cluster i (of entity i at level 0).
struct HierarchyLevel {
  std::vector<int> labels;
  QualityReport quality;  // on this level's node graph

  bool operator==(const HierarchyLevel&) const = default;
};

struct Hierarchy {
  std::vector<HierarchyLevel> levels;

  // Cluster of every entity at `level`.
  std::vector<int> entity_labels(std::size_t level) const;
  bool operator==(const Hierarchy&) const = default;
};

// Re-clusters the clusters of each level, nodes weighted by mean cross-pair entity
// similarity, with the structural seed strategies. Stops at a single cluster, when
// the best partition's MQ (the gain over all-singletons, whose MQ is 0) is below
// config.epsilon_stop, or when a level fails to merge anything.
Hierarchy build_hierarchy(const std::vector<int>& level0, const SimilarityMatrix& entities, SearchConfig config);

}  // namespace archrec
