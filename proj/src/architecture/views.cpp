#include "archrec/architecture/views.hpp"

#include <algorithm>
#include <stdexcept>

namespace archrec {

int cluster_count(const std::vector<int>& labels) {
  int k = 0;
  for (int c : labels) k = std::max(k, c + 1);
  return k;
}

std::vector<std::vector<int>> cluster_members(const std::vector<int>& labels) {
  std::vector<std::vector<int>> out(cluster_count(labels));
  for (std::size_t v = 0; v < labels.size(); ++v) out[labels[v]].push_back(static_cast<int>(v));
  return out;
}

namespace {

void sort_unique(std::vector<MethodRef>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::vector<ClusterInterface> compute_interfaces(const std::vector<int>& labels, const DependencyGraph& g) {
  std::vector<ClusterInterface> out(cluster_count(labels));
  for (std::size_t c = 0; c < out.size(); ++c) out[c].cluster = static_cast<int>(c);
  for (const auto& e : g.edges) {
    const int provider = labels.at(e.callee);
    if (labels.at(e.caller) == provider) continue;
    out[provider].methods.push_back({e.callee, e.method});
  }
  for (auto& i : out) sort_unique(i.methods);
  return out;
}

InteractionGraph compute_interactions(const std::vector<int>& labels, const DependencyGraph& g) {
  std::map<std::pair<int, int>, std::vector<MethodRef>> lists;
  for (const auto& e : g.edges) {
    const int provider = labels.at(e.callee);
    const int consumer = labels.at(e.caller);
    if (provider == consumer) continue;
    lists[{provider, consumer}].push_back({e.callee, e.method});
  }
  InteractionGraph ig;
  ig.cluster_count = cluster_count(labels);
  for (auto& [pair, methods] : lists) {
    sort_unique(methods);
    ig.edges.push_back({pair.first, pair.second, std::move(methods)});
  }
  return ig;
}

int centroid_of(const std::vector<int>& members, const SimilarityMatrix& combined) {
  int best = -1;
  double best_sum = -1.0;
  for (int u : members) {
    double sum = 0.0;
    for (int v : members)
      if (v != u) sum += combined(u, v);
    if (sum > best_sum) {
      best_sum = sum;
      best = u;
    }
  }
  return best;
}

namespace {

std::vector<ScoredConcept> top_concepts(const std::vector<int>& members, const FeatureMatrix& m, int k) {
  std::map<int, double> sums;
  for (int u : members)
    for (const auto& e : m.row(u)) sums[e.col] += e.value;
  std::vector<ScoredConcept> all;
  for (const auto& [col, score] : sums)
    if (score > 0.0) all.push_back({m.label(col), score});
  std::stable_sort(all.begin(), all.end(), [](const ScoredConcept& a, const ScoredConcept& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.word < b.word;
  });
  if (static_cast<int>(all.size()) > k) all.resize(k);
  return all;
}

}  // namespace

std::vector<ClusterLabel> auto_label(const std::vector<int>& labels, const FeatureMatrix& weighted,
                                     const FeatureMatrix& raw, const SimilarityMatrix& combined, int k) {
  if (k < 0) throw std::invalid_argument("label size must be non-negative");
  const auto clusters = cluster_members(labels);
  std::vector<ClusterLabel> out;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    ClusterLabel l;
    l.cluster = static_cast<int>(c);
    l.concepts = top_concepts(clusters[c], weighted, k);
    if (l.concepts.empty() && k > 0) {
      l.concepts = top_concepts(clusters[c], raw, k);
      l.raw_frequency = true;
    }
    l.centroid = centroid_of(clusters[c], combined);
    out.push_back(std::move(l));
  }
  return out;
}

BorderlineReport borderline_classes(const std::vector<int>& labels, const SimilarityMatrix& combined, double tau) {
  BorderlineReport r;
  r.tau = tau;
  const int n = static_cast<int>(labels.size());
  for (int u = 0; u < n; ++u) {
    double home = 0.0, foreign = 0.0;
    int foreign_entity = -1;
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      const double w = combined(u, v);
      if (labels[v] == labels[u]) {
        home = std::max(home, w);
      } else if (w > foreign) {
        foreign = w;
        foreign_entity = v;
      }
    }
    if (foreign > 0.0 && foreign >= tau * home)
      r.entries.push_back({u, labels[u], labels[foreign_entity], foreign_entity, foreign, home});
  }
  return r;
}

int bucket_edge(double w) {
  if (!(w > 0.0)) return 0;
  if (w <= 0.2) return 1;
  if (w <= 0.4) return 2;
  if (w <= 0.6) return 3;
  if (w <= 0.8) return 4;
  return 5;
}

std::vector<BucketedEdge> intra_cluster_edges(const std::vector<int>& labels, const SimilarityMatrix& combined) {
  std::vector<BucketedEdge> out;
  for (const auto& members : cluster_members(labels))
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const double w = combined(members[i], members[j]);
        if (const int b = bucket_edge(w)) out.push_back({members[i], members[j], w, b});
      }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  return out;
}

double cluster_pair_similarity(const std::vector<int>& a, const std::vector<int>& b, const SimilarityMatrix& g) {
  if (a.empty() || b.empty()) throw std::invalid_argument("cluster_pair_similarity needs nonempty clusters");
  double sum = 0.0;
  for (int u : a)
    for (int v : b) sum += g(u, v);
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

WeightedGraph cluster_graph(const std::vector<std::vector<int>>& clusters, const SimilarityMatrix& g) {
  WeightedGraph out(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j) out.set(i, j, cluster_pair_similarity(clusters[i], clusters[j], g));
  return out;
}

std::vector<LayerUsage> cross_layer_usage(const std::vector<int>& labels, const std::vector<SideEdge>& side) {
  std::vector<LayerUsage> out(cluster_count(labels));
  for (const auto& e : side) out[labels.at(e.caller)][e.layer].insert(e.callee);
  return out;
}

}  // namespace archrec
