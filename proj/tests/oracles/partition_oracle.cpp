#include "oracles/partition_oracle.hpp"

#include <algorithm>
#include <map>

namespace oracle {

Quality evaluate(const archrec::WeightedGraph& g, const std::vector<int>& labels) {
  std::map<int, double> intra, inter;
  std::map<int, int> size;
  const int n = static_cast<int>(labels.size());
  for (int v = 0; v < n; ++v) {
    ++size[labels[v]];
    intra[labels[v]] += 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == v) continue;
      if (labels[k] == labels[v]) intra[labels[v]] += g(v, k);
      else inter[labels[v]] += g(v, k);
    }
  }
  Quality q;
  int lo = n, hi = 0;
  for (const auto& [c, s] : size) {
    const double e = intra[c];
    const double m = inter[c];
    q.mq += (e + m) > 0.0 ? e / (e + m) : 0.0;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    if (s <= 2) ++q.iso;
  }
  q.clusters = static_cast<int>(size.size());
  q.diff = q.clusters ? hi - lo : 0;
  q.mqc = 2.0 * q.mq + q.clusters - q.diff - q.iso;
  return q;
}

namespace {

template <typename Key>
Optimum best_by(const archrec::WeightedGraph& g, Key key) {
  Optimum best;
  bool first = true;
  for_each_partition(static_cast<int>(g.size()), [&](const std::vector<int>& labels) {
    ++best.partitions_seen;
    const Quality q = evaluate(g, labels);
    if (first || key(q) > key(best.quality)) {
      best.quality = q;
      best.labels = labels;
      first = false;
    }
  });
  return best;
}

}  // namespace

Optimum brute_force_mqc(const archrec::WeightedGraph& g) {
  return best_by(g, [](const Quality& q) { return q.mqc; });
}

Optimum brute_force_mq(const archrec::WeightedGraph& g) {
  return best_by(g, [](const Quality& q) { return q.mq; });
}

}  // namespace oracle
