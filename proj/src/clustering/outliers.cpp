#include "archrec/clustering/outliers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "archrec/core/rng.hpp"

namespace archrec {

double skewness_g1(const std::vector<double>& sizes) {
  const std::size_t n = sizes.size();
  if (n < 3) return 0.0;
  const double mean = std::accumulate(sizes.begin(), sizes.end(), 0.0) / static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double x : sizes) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  if (m2 == 0.0) return 0.0;
  const double nn = static_cast<double>(n);
  const double s = std::sqrt(m2 / (nn - 1.0));
  return nn / ((nn - 1.0) * (nn - 2.0)) * m3 / (s * s * s);
}

double next_percentile(double alpha) {
  if (alpha < 95.0) return alpha + std::floor((99.0 - alpha) / 2.0);
  return std::min(99.0, alpha + 1.0);
}

MinCut stoer_wagner(const WeightedGraph& g, const std::vector<int>& nodes) {
  const std::size_t m = nodes.size();
  MinCut best;
  if (m < 2) {
    best.side = nodes;
    return best;
  }
  std::vector<std::vector<double>> w(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a != b) w[a][b] = g(nodes[a], nodes[b]);
  std::vector<std::vector<int>> groups(m);
  for (std::size_t a = 0; a < m; ++a) groups[a] = {nodes[a]};
  std::vector<int> active(m);
  std::iota(active.begin(), active.end(), 0);
  best.weight = -1.0;

  while (active.size() > 1) {
    std::vector<double> key(m, 0.0);
    std::vector<char> added(m, 0);
    int prev = -1, last = -1;
    for (std::size_t step = 0; step < active.size(); ++step) {
      int pick = -1;
      for (int v : active)
        if (!added[v] && (pick < 0 || key[v] > key[pick])) pick = v;
      if (pick < 0) break;
      added[pick] = 1;
      prev = last;
      last = pick;
      for (int v : active)
        if (!added[v]) key[v] += w[pick][v];
    }
    const double cut = key[last];
    if (best.weight < 0.0 || cut < best.weight) {
      best.weight = cut;
      best.side = groups[last];
    }
    // merge `last` into `prev`
    groups[prev].insert(groups[prev].end(), groups[last].begin(), groups[last].end());
    for (int v : active) {
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    w[prev][prev] = 0.0;
    active.erase(std::find(active.begin(), active.end(), last));
  }
  std::sort(best.side.begin(), best.side.end());
  return best;
}

namespace {

std::vector<std::vector<int>> groups_of(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> by;
  for (std::size_t v = 0; v < labels.size(); ++v) by[labels[v]].push_back(static_cast<int>(v));
  std::vector<std::vector<int>> out;
  for (auto& [l, members] : by) out.push_back(std::move(members));
  return out;
}

double median_size(const std::vector<std::vector<int>>& groups) {
  std::vector<double> sizes;
  for (const auto& grp : groups) sizes.push_back(static_cast<double>(grp.size()));
  std::sort(sizes.begin(), sizes.end());
  const std::size_t k = sizes.size();
  return k % 2 ? sizes[k / 2] : 0.5 * (sizes[k / 2 - 1] + sizes[k / 2]);
}

void split_until(const WeightedGraph& g, std::vector<int> nodes, double limit,
                 std::vector<std::vector<int>>& out, int& splits) {
  if (static_cast<double>(nodes.size()) <= limit || nodes.size() < 2) {
    out.push_back(std::move(nodes));
    return;
  }
  const MinCut cut = stoer_wagner(g, nodes);
  ++splits;
  std::vector<int> rest;
  std::set_difference(nodes.begin(), nodes.end(), cut.side.begin(), cut.side.end(), std::back_inserter(rest));
  split_until(g, cut.side, limit, out, splits);
  split_until(g, rest, limit, out, splits);
}

}  // namespace

OutlierResult eliminate_outliers(const SeedContext& ctx, int max_iterations) {
  const WeightedGraph& g = *ctx.graph;
  OutlierResult r;
  r.percentile = ctx.percentile;
  SeedContext local = ctx;
  Rng unused(0);
  local.percentile = r.percentile;
  r.labels = generate_seed(SeedStrategy::CC, local, unused);

  for (r.iterations = 0; r.iterations < max_iterations; ++r.iterations) {
    const auto groups = groups_of(r.labels);
    std::vector<double> sizes;
    for (const auto& grp : groups) sizes.push_back(static_cast<double>(grp.size()));
    if (skewness_g1(sizes) <= 2.0) return r;
    const double median = median_size(groups);

    if (r.percentile < 99.0) {
      r.percentile = next_percentile(r.percentile);
      local.percentile = r.percentile;
      r.labels = generate_seed(SeedStrategy::CC, local, unused);
      continue;
    }
    std::vector<std::vector<int>> pieces;
    for (const auto& grp : groups) {
      if (static_cast<double>(grp.size()) > median) split_until(g, grp, median, pieces, r.splits);
      else pieces.push_back(grp);
    }
    std::sort(pieces.begin(), pieces.end());
    for (std::size_t c = 0; c < pieces.size(); ++c)
      for (int v : pieces[c]) r.labels[v] = static_cast<int>(c);
  }
  r.capped = true;
  return r;
}

}  // namespace archrec
