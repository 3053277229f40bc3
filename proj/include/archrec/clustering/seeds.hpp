#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "archrec/core/exec.hpp"
#include "archrec/core/rng.hpp"
#include "archrec/core/symmetric_matrix.hpp"

namespace archrec {

enum class SeedStrategy { CC, Inherit, Package, Random, KMeans, Clique };

std::string seed_name(SeedStrategy s);  // "CC", "INHERIT", ...
SeedStrategy parse_seed(std::string_view name);
const std::vector<SeedStrategy>& all_seed_strategies();
// The strategies that need no class-level metadata (used above class level).
const std::vector<SeedStrategy>& structural_seed_strategies();

struct SeedContext {
  const WeightedGraph* graph = nullptr;
  const SimilarityMatrix* inheritance = nullptr;  // delta_in; INHERIT degenerates without it
  std::vector<std::string> packages;              // per node; empty when unknown
  int component_limit = 0;                        // 0: twice the package count, or n without packages
  double percentile = 75.0;                       // edges above this percentile are "top"
  Exec exec = Exec::Parallel;

  int effective_component_limit() const;
};

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

// The ceil(pairs * (100 - percentile) / 100) heaviest positive-weight pairs,
// heaviest first, ties by (u, v).
std::vector<WeightedEdge> top_edges(const WeightedGraph& g, double percentile);

// Sum of w(u, w) over top edges {u, w} not touching v where v reaches u or w by a top edge.
double clique_strength(int v, const std::vector<WeightedEdge>& top, const WeightedGraph& g);

// Cluster labels (not necessarily dense) for one seed strategy.
std::vector<int> generate_seed(SeedStrategy s, const SeedContext& ctx, Rng& rng);

// Lloyd iterations over graph rows as feature vectors, at most `max_iterations`.
std::vector<int> kmeans_labels(const WeightedGraph& g, int k, Rng& rng, int max_iterations = 100,
                               Exec exec = Exec::Parallel);

// Nodes labelled -1 join, in id order, the cluster with the largest summed weight
// to its current members (lowest label on ties).
void attach_leftovers(const WeightedGraph& g, std::vector<int>& labels);

}  // namespace archrec
