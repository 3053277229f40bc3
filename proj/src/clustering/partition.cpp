#include "archrec/clustering/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace archrec {

double mqc_of(double mq, int clusters, int diff, int iso) { return 2.0 * mq + clusters - diff - iso; }

namespace {

double factor(double eps, double mu) {
  const double total = eps + mu;
  return total > 0.0 ? eps / total : 0.0;
}

bool small(int size) { return size == 1 || size == 2; }

// Per-node split of a row into weight towards the node's own cluster and
// towards the rest. Summed per cluster in node order so the result does not
// depend on the thread count.
void node_sums(const WeightedGraph& g, const std::vector<int>& labels, Exec exec, std::vector<double>& inside,
               std::vector<double>& outside) {
  const std::size_t n = labels.size();
  inside.assign(n, 0.0);
  outside.assign(n, 0.0);
  auto one = [&](std::size_t v) {
    double in = 0.0, out = 0.0;
    const auto row = g.row(v);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == v) continue;
      if (labels[k] == labels[v]) in += row[k];
      else out += row[k];
    }
    inside[v] = in;
    outside[v] = out;
  };
  const auto rows = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t v = 0; v < rows; ++v) one(v);
  } else {
    for (std::ptrdiff_t v = 0; v < rows; ++v) one(v);
  }
}

}  // namespace

Partition::Partition(const WeightedGraph& g, const std::vector<int>& labels, Exec exec) : g_(&g) {
  if (labels.size() != g.size()) throw std::invalid_argument("partition labels do not match graph size");
  std::map<int, int> dense;
  assign_.resize(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0) throw std::invalid_argument("partition labels must be non-negative");
    auto [it, inserted] = dense.emplace(labels[v], static_cast<int>(dense.size()));
    assign_[v] = it->second;
  }
  members_.assign(dense.size(), {});
  position_.assign(labels.size(), 0);
  for (std::size_t v = 0; v < labels.size(); ++v) {
    position_[v] = static_cast<int>(members_[assign_[v]].size());
    members_[assign_[v]].push_back(static_cast<int>(v));
  }
  strength_.resize(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) strength_[v] = g.strength(v);
  refresh(exec);
}

Partition Partition::whole(const WeightedGraph& g) { return Partition(g, std::vector<int>(g.size(), 0)); }

Partition Partition::singletons(const WeightedGraph& g) {
  std::vector<int> labels(g.size());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = static_cast<int>(v);
  return Partition(g, labels);
}

void Partition::refresh(Exec exec) {
  std::vector<double> inside, outside;
  node_sums(*g_, assign_, exec, inside, outside);
  eps_.assign(members_.size(), 0.0);
  mu_.assign(members_.size(), 0.0);
  for (std::size_t v = 0; v < assign_.size(); ++v) {
    eps_[assign_[v]] += inside[v];
    mu_[assign_[v]] += outside[v];
  }
  sizes_.clear();
  live_ = 0;
  mq_ = 0.0;
  for (std::size_t s = 0; s < members_.size(); ++s) {
    if (members_[s].empty()) continue;
    ++live_;
    ++sizes_[static_cast<int>(members_[s].size())];
    mq_ += factor(eps_[s], mu_[s]);
  }
}

std::vector<int> Partition::live_slots() const {
  std::vector<int> out;
  for (int s = 0; s < slot_count(); ++s)
    if (is_live(s)) out.push_back(s);
  return out;
}

std::vector<std::vector<int>> Partition::clusters() const {
  std::vector<std::vector<int>> out;
  for (const auto& m : members_) {
    if (m.empty()) continue;
    auto sorted = m;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
  }
  return out;
}

std::vector<int> Partition::canonical_labels() const {
  std::map<int, int> dense;
  std::vector<int> out(assign_.size());
  for (std::size_t v = 0; v < assign_.size(); ++v) {
    auto [it, inserted] = dense.emplace(assign_[v], static_cast<int>(dense.size()));
    out[v] = it->second;
  }
  return out;
}

double Partition::cluster_factor(int slot) const { return factor(eps_[slot], mu_[slot]); }

int Partition::diff() const {
  if (sizes_.empty()) return 0;
  return sizes_.rbegin()->first - sizes_.begin()->first;
}

int Partition::iso() const {
  int n = 0;
  for (const auto& [size, count] : sizes_)
    if (small(size)) n += count;
  return n;
}

QualityReport Partition::quality() const {
  QualityReport q;
  q.mq = mq_;
  q.cluster_count = live_;
  q.diff = diff();
  q.iso = iso();
  q.mqc = mqc_of(q.mq, q.cluster_count, q.diff, q.iso);
  return q;
}

std::vector<double> Partition::affinity(int node) const {
  std::vector<double> out(members_.size(), 0.0);
  const auto row = g_->row(node);
  for (std::size_t k = 0; k < assign_.size(); ++k)
    if (static_cast<int>(k) != node) out[assign_[k]] += row[k];
  return out;
}

double Partition::affinity(int node, int slot) const {
  if (slot == kNewCluster) return 0.0;
  double s = 0.0;
  const auto row = g_->row(node);
  for (int k : members_[slot])
    if (k != node) s += row[k];
  return s;
}

std::vector<std::vector<double>> Partition::affinity_matrix(Exec exec) const {
  const auto n = static_cast<std::ptrdiff_t>(assign_.size());
  std::vector<std::vector<double>> out(assign_.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t v = 0; v < n; ++v) out[v] = affinity(static_cast<int>(v));
  } else {
    for (std::ptrdiff_t v = 0; v < n; ++v) out[v] = affinity(static_cast<int>(v));
  }
  return out;
}

bool Partition::valid(const Move& m) const {
  if (m.node < 0 || m.node >= static_cast<int>(assign_.size())) return false;
  if (m.from != assign_[m.node]) return false;
  if (m.to == kNewCluster) return members_[m.from].size() > 1;
  return m.to >= 0 && m.to < slot_count() && m.to != m.from && is_live(m.to);
}

MoveEffect Partition::evaluate(const Move& m, double s_i, double s_j) const {
  const double t = strength_[m.node];
  const int i = m.from;
  const bool fresh = m.to == kNewCluster;
  const double eps_i = eps_[i] - 2.0 * s_i;
  const double mu_i = mu_[i] - t + 2.0 * s_i;
  const double eps_j = (fresh ? 0.0 : eps_[m.to]) + 2.0 * s_j;
  const double mu_j = (fresh ? 0.0 : mu_[m.to]) + t - 2.0 * s_j;

  const int size_i = static_cast<int>(members_[i].size());
  const int size_j = fresh ? 0 : static_cast<int>(members_[m.to].size());

  MoveEffect e;
  e.mq = mq_ - cluster_factor(i) - (fresh ? 0.0 : cluster_factor(m.to)) +
         (size_i > 1 ? factor(eps_i, mu_i) : 0.0) + factor(eps_j, mu_j);
  e.cluster_count = live_ - (size_i == 1 ? 1 : 0) + (fresh ? 1 : 0);

  // Size histogram after the move: at most two sizes drop, two appear.
  auto adjusted = [&](int size) {
    auto it = sizes_.find(size);
    int c = it == sizes_.end() ? 0 : it->second;
    if (size == size_i) --c;
    if (size == size_i - 1 && size_i > 1) ++c;
    if (!fresh && size == size_j) --c;
    if (size == size_j + 1) ++c;
    return c;
  };
  int hi = std::max(size_j + 1, size_i > 1 ? size_i - 1 : 0);
  for (auto it = sizes_.rbegin(); it != sizes_.rend(); ++it)
    if (adjusted(it->first) > 0) {
      hi = std::max(hi, it->first);
      break;
    }
  int lo = size_j + 1;
  if (size_i > 1) lo = std::min(lo, size_i - 1);
  for (auto it = sizes_.begin(); it != sizes_.end(); ++it)
    if (adjusted(it->first) > 0) {
      lo = std::min(lo, it->first);
      break;
    }
  e.diff = hi - lo;

  int iso = this->iso();
  if (small(size_i)) --iso;
  if (small(size_i - 1)) ++iso;
  if (!fresh && small(size_j)) --iso;
  if (small(size_j + 1)) ++iso;
  e.iso = iso;
  return e;
}

MoveEffect Partition::evaluate(const Move& m) const {
  return evaluate(m, affinity(m.node, m.from), affinity(m.node, m.to));
}

void Partition::add_size(int size, int delta) {
  if (size <= 0) return;
  auto& c = sizes_[size];
  c += delta;
  if (c == 0) sizes_.erase(size);
}

int Partition::apply(const Move& m) {
  if (!valid(m)) throw std::invalid_argument("invalid move");
  const double s_i = affinity(m.node, m.from);
  const double s_j = affinity(m.node, m.to);
  const MoveEffect e = evaluate(m, s_i, s_j);
  const double t = strength_[m.node];

  int to = m.to;
  if (to == kNewCluster) {
    to = slot_count();
    for (int s = 0; s < slot_count(); ++s)
      if (members_[s].empty()) {
        to = s;
        break;
      }
    if (to == slot_count()) {
      members_.emplace_back();
      eps_.push_back(0.0);
      mu_.push_back(0.0);
    } else {
      eps_[to] = mu_[to] = 0.0;
    }
  }
  const int i = m.from;
  const int size_i = static_cast<int>(members_[i].size());
  const int size_j = static_cast<int>(members_[to].size());

  eps_[i] -= 2.0 * s_i;
  mu_[i] += 2.0 * s_i - t;
  eps_[to] += 2.0 * s_j;
  mu_[to] += t - 2.0 * s_j;

  auto& from_list = members_[i];
  const int pos = position_[m.node];
  const int last = from_list.back();
  from_list[pos] = last;
  position_[last] = pos;
  from_list.pop_back();
  if (from_list.empty()) eps_[i] = mu_[i] = 0.0;

  position_[m.node] = static_cast<int>(members_[to].size());
  members_[to].push_back(m.node);
  assign_[m.node] = to;

  add_size(size_i, -1);
  add_size(size_i - 1, +1);
  add_size(size_j, -1);
  add_size(size_j + 1, +1);
  live_ = e.cluster_count;
  mq_ = e.mq;
  return to;
}

void Partition::compact() {
  std::vector<int> remap(members_.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < members_.size(); ++s)
    if (!members_[s].empty()) remap[s] = next++;
  std::vector<std::vector<int>> members(next);
  std::vector<double> eps(next), mu(next);
  for (std::size_t s = 0; s < members_.size(); ++s) {
    if (remap[s] < 0) continue;
    members[remap[s]] = std::move(members_[s]);
    eps[remap[s]] = eps_[s];
    mu[remap[s]] = mu_[s];
  }
  for (auto& a : assign_) a = remap[a];
  members_ = std::move(members);
  eps_ = std::move(eps);
  mu_ = std::move(mu);
}

bool Partition::check_invariants(double tol, std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  int live = 0;
  std::vector<int> seen(assign_.size(), 0);
  for (int s = 0; s < slot_count(); ++s) {
    if (!members_[s].empty()) ++live;
    for (std::size_t p = 0; p < members_[s].size(); ++p) {
      const int v = members_[s][p];
      if (assign_[v] != s) return fail("member list disagrees with assignment");
      if (position_[v] != static_cast<int>(p)) return fail("stale member position");
      ++seen[v];
    }
  }
  for (int c : seen)
    if (c != 1) return fail("clusters do not form a disjoint cover");
  if (live != live_) return fail("live cluster count is stale");

  std::vector<double> inside, outside;
  node_sums(*g_, assign_, Exec::Serial, inside, outside);
  std::vector<double> eps(members_.size(), 0.0), mu(members_.size(), 0.0);
  for (std::size_t v = 0; v < assign_.size(); ++v) {
    eps[assign_[v]] += inside[v];
    mu[assign_[v]] += outside[v];
  }
  double mq = 0.0;
  for (int s = 0; s < slot_count(); ++s) {
    if (std::abs(eps[s] - eps_[s]) > tol || std::abs(mu[s] - mu_[s]) > tol) {
      std::ostringstream msg;
      msg << "cluster " << s << " cache (" << eps_[s] << ", " << mu_[s] << ") != (" << eps[s] << ", " << mu[s] << ")";
      return fail(msg.str());
    }
    if (!members_[s].empty()) mq += factor(eps[s], mu[s]);
  }
  if (std::abs(mq - mq_) > tol) return fail("cached MQ is stale");
  std::map<int, int> sizes;
  for (const auto& m : members_)
    if (!m.empty()) ++sizes[static_cast<int>(m.size())];
  if (sizes != sizes_) return fail("size histogram is stale");
  return true;
}

double mq(const WeightedGraph& g, const std::vector<int>& labels) { return Partition(g, labels).mq(); }

QualityReport quality_of(const WeightedGraph& g, const std::vector<int>& labels) {
  return Partition(g, labels).quality();
}

namespace reference {

double mq(const WeightedGraph& g, const std::vector<int>& labels) {
  std::map<int, std::pair<double, double>> sums;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto& [eps, mu] = sums[labels[v]];
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (k == v) continue;
      if (labels[k] == labels[v]) eps += g(v, k);
      else mu += g(v, k);
    }
  }
  double total = 0.0;
  for (const auto& [label, s] : sums) total += factor(s.first, s.second);
  return total;
}

std::vector<std::vector<double>> affinity_matrix(const Partition& p) {
  std::vector<std::vector<double>> out(p.node_count(), std::vector<double>(p.slot_count(), 0.0));
  for (std::size_t v = 0; v < p.node_count(); ++v)
    for (std::size_t k = 0; k < p.node_count(); ++k)
      if (k != v) out[v][p.cluster_of(static_cast<int>(k))] += p.graph()(v, k);
  return out;
}

}  // namespace reference

}  // namespace archrec
