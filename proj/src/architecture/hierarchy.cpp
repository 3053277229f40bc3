#include "archrec/architecture/hierarchy.hpp"

#include "archrec/architecture/views.hpp"

namespace archrec {

std::vector<int> Hierarchy::entity_labels(std::size_t level) const {
  std::vector<int> labels = levels.at(0).labels;
  for (std::size_t l = 1; l <= level; ++l)
    for (int& c : labels) c = levels.at(l).labels.at(c);
  return labels;
}

Hierarchy build_hierarchy(const std::vector<int>& level0, const SimilarityMatrix& entities, SearchConfig config) {
  Hierarchy h;
  h.levels.push_back({level0, quality_of(entities, level0)});
  config.strategies = structural_seed_strategies();
  config.trace = false;
  config.outlier_elimination = false;
  std::uint64_t level_seed = config.seed;

  while (true) {
    const auto clusters = cluster_members(h.entity_labels(h.levels.size() - 1));
    if (clusters.size() <= 1) break;
    const WeightedGraph g = cluster_graph(clusters, entities);
    SeedContext ctx;
    ctx.graph = &g;
    ctx.exec = config.exec;
    config.seed = Rng::derive(level_seed, h.levels.size());
    const SearchResult r = search(ctx, config);
    if (r.quality.mq < config.epsilon_stop) break;
    if (r.quality.cluster_count >= static_cast<int>(clusters.size())) break;
    h.levels.push_back({r.labels, r.quality});
  }
  return h;
}

}  // namespace archrec
