#include "archrec/clustering/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "archrec/core/error.hpp"

namespace archrec {

std::string seed_name(SeedStrategy s) {
  switch (s) {
    case SeedStrategy::CC: return "CC";
    case SeedStrategy::Inherit: return "INHERIT";
    case SeedStrategy::Package: return "PACKAGE";
    case SeedStrategy::Random: return "RANDOM";
    case SeedStrategy::KMeans: return "KMEANS";
    case SeedStrategy::Clique: return "CLIQUE";
  }
  return "?";
}

SeedStrategy parse_seed(std::string_view name) {
  for (auto s : all_seed_strategies())
    if (seed_name(s) == name) return s;
  std::string lowered(name);
  for (auto& c : lowered) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto s : all_seed_strategies())
    if (seed_name(s) == lowered) return s;
  throw ConfigError("unknown seed strategy '" + std::string(name) +
                    "' (expected CC, INHERIT, PACKAGE, RANDOM, KMEANS, CLIQUE)");
}

const std::vector<SeedStrategy>& all_seed_strategies() {
  static const std::vector<SeedStrategy> all = {SeedStrategy::CC,     SeedStrategy::Inherit,
                                                SeedStrategy::Package, SeedStrategy::Random,
                                                SeedStrategy::KMeans, SeedStrategy::Clique};
  return all;
}

const std::vector<SeedStrategy>& structural_seed_strategies() {
  static const std::vector<SeedStrategy> some = {SeedStrategy::CC, SeedStrategy::Random, SeedStrategy::KMeans,
                                                 SeedStrategy::Clique};
  return some;
}

int SeedContext::effective_component_limit() const {
  if (component_limit > 0) return component_limit;
  if (packages.empty()) return static_cast<int>(graph->size());
  return 2 * static_cast<int>(std::set<std::string>(packages.begin(), packages.end()).size());
}

std::vector<WeightedEdge> top_edges(const WeightedGraph& g, double percentile) {
  std::vector<WeightedEdge> edges;
  const std::size_t n = g.size();
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (g(u, v) > 0.0) edges.push_back({static_cast<int>(u), static_cast<int>(v), g(u, v)});
  std::stable_sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) { return a.w > b.w; });
  const double share = std::clamp(100.0 - percentile, 0.0, 100.0) / 100.0;
  const auto keep = static_cast<std::size_t>(std::ceil(static_cast<double>(g.pair_count()) * share - 1e-9));
  if (edges.size() > keep) edges.resize(keep);
  return edges;
}

double clique_strength(int v, const std::vector<WeightedEdge>& top, const WeightedGraph& g) {
  std::set<std::pair<int, int>> in_top;
  for (const auto& e : top) in_top.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  auto linked = [&](int a, int b) { return in_top.count({std::min(a, b), std::max(a, b)}) > 0; };
  double s = 0.0;
  for (const auto& e : top) {
    if (e.u == v || e.v == v) continue;
    if (linked(v, e.u) || linked(v, e.v)) s += g(e.u, e.v);
  }
  return s;
}

void attach_leftovers(const WeightedGraph& g, std::vector<int>& labels) {
  int clusters = 0;
  for (int l : labels) clusters = std::max(clusters, l + 1);
  if (clusters == 0) {
    std::fill(labels.begin(), labels.end(), 0);
    return;
  }
  std::vector<std::vector<int>> members(clusters);
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v] >= 0) members[labels[v]].push_back(static_cast<int>(v));
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] >= 0) continue;
    int best = 0;
    double best_w = -1.0;
    for (int c = 0; c < clusters; ++c) {
      if (members[c].empty()) continue;
      double w = 0.0;
      for (int m : members[c]) w += g(v, m);
      if (w > best_w) {
        best_w = w;
        best = c;
      }
    }
    labels[v] = best;
    members[best].push_back(static_cast<int>(v));
  }
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
  std::vector<int> parent;
  std::vector<int> size;
};

// Component labels over the given edges; nodes touched by no edge get -1.
std::vector<int> component_labels(std::size_t n, const std::vector<WeightedEdge>& edges, int limit) {
  UnionFind uf(n);
  std::vector<char> touched(n, 0);
  int components = 0;  // sets with at least two nodes
  for (const auto& e : edges) {
    if (components >= limit) break;
    const bool fresh_u = !touched[e.u];
    const bool fresh_v = !touched[e.v];
    const int ru = uf.find(e.u);
    const int rv = uf.find(e.v);
    if (ru == rv) continue;
    if (fresh_u && fresh_v) ++components;
    else if (!fresh_u && !fresh_v) --components;
    uf.unite(e.u, e.v);
    touched[e.u] = touched[e.v] = 1;
  }
  std::vector<int> labels(n, -1);
  std::map<int, int> dense;
  for (std::size_t v = 0; v < n; ++v) {
    if (!touched[v]) continue;
    auto [it, inserted] = dense.emplace(uf.find(static_cast<int>(v)), static_cast<int>(dense.size()));
    labels[v] = it->second;
  }
  return labels;
}

std::vector<int> cc_seed(const SeedContext& ctx) {
  const WeightedGraph& g = *ctx.graph;
  auto labels = component_labels(g.size(), top_edges(g, ctx.percentile), ctx.effective_component_limit());
  attach_leftovers(g, labels);
  return labels;
}

std::vector<int> inherit_seed(const SeedContext& ctx) {
  const WeightedGraph& g = *ctx.graph;
  std::vector<WeightedEdge> edges;
  if (ctx.inheritance) {
    const auto& in = *ctx.inheritance;
    for (std::size_t u = 0; u < in.size(); ++u)
      for (std::size_t v = u + 1; v < in.size(); ++v)
        if (in(u, v) > 0.0) edges.push_back({static_cast<int>(u), static_cast<int>(v), in(u, v)});
  }
  auto labels = component_labels(g.size(), edges, static_cast<int>(g.size()));
  attach_leftovers(g, labels);
  return labels;
}

std::vector<int> package_seed(const SeedContext& ctx) {
  const std::size_t n = ctx.graph->size();
  if (ctx.packages.size() != n) return std::vector<int>(n, 0);
  std::map<std::string, int> ids;
  std::vector<int> labels(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto [it, inserted] = ids.emplace(ctx.packages[v], static_cast<int>(ids.size()));
    labels[v] = it->second;
  }
  return labels;
}

std::vector<int> random_seed(std::size_t d, Rng& rng) {
  const auto k = rng.uniform_int(1, static_cast<std::int64_t>(d));
  std::vector<int> labels(d);
  for (auto& l : labels) l = static_cast<int>(rng.uniform_int(1, k)) - 1;
  return labels;
}

std::vector<int> clique_seed(const SeedContext& ctx) {
  const WeightedGraph& g = *ctx.graph;
  const int n = static_cast<int>(g.size());
  const auto top = top_edges(g, ctx.percentile);

  // adjacency in the top set, then strength(v) = sum over top edges {u, w}
  // (u, w != v) with v adjacent to u or w
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : top) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  std::vector<double> strength(n, 0.0);
  for (int v = 0; v < n; ++v)
    for (const auto& e : top)
      if (e.u != v && e.v != v && (adj[v][e.u] || adj[v][e.v])) strength[v] += e.w;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return strength[a] > strength[b]; });
  const int centres = std::max(1, (n + 3) / 4);
  std::vector<int> labels(n, -1);
  for (int c = 0; c < centres; ++c) labels[order[c]] = c;
  attach_leftovers(g, labels);
  return labels;
}

}  // namespace

std::vector<int> kmeans_labels(const WeightedGraph& g, int k, Rng& rng, int max_iterations, Exec exec) {
  const int n = static_cast<int>(g.size());
  k = std::clamp(k, 1, n);
  // k distinct rows as initial centroids (partial Fisher-Yates)
  std::vector<int> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  for (int i = 0; i < k; ++i) std::swap(pick[i], pick[rng.uniform_int(i, n - 1)]);
  std::vector<std::vector<double>> centroid(k);
  for (int c = 0; c < k; ++c) {
    const auto row = g.row(pick[c]);
    centroid[c].assign(row.begin(), row.end());
  }

  std::vector<int> labels(n, -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<int> next(n);
    auto assign = [&](int v) {
      const auto row = g.row(v);
      int best = 0;
      double best_d = 0.0;
      for (int c = 0; c < k; ++c) {
        double d = 0.0;
        for (int r = 0; r < n; ++r) {
          const double x = row[r] - centroid[c][r];
          d += x * x;
        }
        if (c == 0 || d < best_d) {
          best_d = d;
          best = c;
        }
      }
      next[v] = best;
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
      for (int v = 0; v < n; ++v) assign(v);
    } else {
      for (int v = 0; v < n; ++v) assign(v);
    }
    if (next == labels) break;
    labels = std::move(next);
    std::vector<int> count(k, 0);
    std::vector<std::vector<double>> sum(k, std::vector<double>(n, 0.0));
    for (int v = 0; v < n; ++v) {
      ++count[labels[v]];
      const auto row = g.row(v);
      for (int r = 0; r < n; ++r) sum[labels[v]][r] += row[r];
    }
    for (int c = 0; c < k; ++c)
      if (count[c] > 0)
        for (int r = 0; r < n; ++r) centroid[c][r] = sum[c][r] / count[c];
  }
  return labels;
}

std::vector<int> generate_seed(SeedStrategy s, const SeedContext& ctx, Rng& rng) {
  const std::size_t d = ctx.graph->size();
  if (d <= 1) return std::vector<int>(d, 0);
  switch (s) {
    case SeedStrategy::CC: return cc_seed(ctx);
    case SeedStrategy::Inherit: return inherit_seed(ctx);
    case SeedStrategy::Package: return package_seed(ctx);
    case SeedStrategy::Random: return random_seed(d, rng);
    case SeedStrategy::KMeans: {
      const auto k = static_cast<int>(rng.uniform_int(1, static_cast<std::int64_t>(d)));
      return kmeans_labels(*ctx.graph, k, rng, 100, ctx.exec);
    }
    case SeedStrategy::Clique: return clique_seed(ctx);
  }
  return std::vector<int>(d, 0);
}

}  // namespace archrec
