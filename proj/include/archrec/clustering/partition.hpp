#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "archrec/core/exec.hpp"
#include "archrec/core/symmetric_matrix.hpp"

namespace archrec {

inline constexpr int kNewCluster = -1;

// Node `node` leaves cluster slot `from` for slot `to` (or a fresh cluster).
struct Move {
  int node = 0;
  int from = 0;
  int to = kNewCluster;

  bool operator==(const Move&) const = default;
};

struct QualityReport {
  double mq = 0.0;
  double mqc = 0.0;
  int diff = 0;
  int iso = 0;
  int cluster_count = 0;

  bool operator==(const QualityReport&) const = default;
};

// mqc = 2 mq + |P| - diff - iso
double mqc_of(double mq, int clusters, int diff, int iso);

// Quality of a partition after a hypothetical move.
struct MoveEffect {
  double mq = 0.0;
  int cluster_count = 0;
  int diff = 0;
  int iso = 0;

  double mqc() const { return mqc_of(mq, cluster_count, diff, iso); }
};

// A clustering of the vertices of a weighted graph together with the per-cluster
// intra (epsilon, both orientations of every pair) and inter (mu) weight sums
// that make a single move O(1) to score once the node's affinities are known.
//
// Clusters live in stable slots; a slot emptied by a move stays empty until
// compact() renumbers the live slots in order.
class Partition {
 public:
  Partition() = default;
  // `labels` are arbitrary non-negative ints; they are renumbered densely in
  // order of first appearance.
  Partition(const WeightedGraph& g, const std::vector<int>& labels, Exec exec = Exec::Parallel);

  static Partition whole(const WeightedGraph& g);
  static Partition singletons(const WeightedGraph& g);

  const WeightedGraph& graph() const { return *g_; }
  std::size_t node_count() const { return assign_.size(); }
  int cluster_count() const { return live_; }
  int slot_count() const { return static_cast<int>(members_.size()); }
  bool is_live(int slot) const { return !members_[slot].empty(); }
  std::vector<int> live_slots() const;

  int cluster_of(int node) const { return assign_[node]; }
  const std::vector<int>& assignment() const { return assign_; }
  const std::vector<int>& members(int slot) const { return members_[slot]; }
  // Live clusters in slot order, members ascending.
  std::vector<std::vector<int>> clusters() const;
  // Dense labels in order of first appearance over node ids.
  std::vector<int> canonical_labels() const;

  double intra(int slot) const { return eps_[slot]; }
  double inter(int slot) const { return mu_[slot]; }
  double cluster_factor(int slot) const;
  double mq() const { return mq_; }
  int diff() const;
  int iso() const;
  QualityReport quality() const;

  // Summed weight from `node` to every slot (its own slot excludes itself).
  std::vector<double> affinity(int node) const;
  double affinity(int node, int slot) const;
  // affinity() for every node, one row per node.
  std::vector<std::vector<double>> affinity_matrix(Exec exec = Exec::Parallel) const;

  // Quality after `m`, given node's affinity to m.from and m.to (0 for a new cluster).
  MoveEffect evaluate(const Move& m, double to_from, double to_target) const;
  MoveEffect evaluate(const Move& m) const;
  bool valid(const Move& m) const;
  // Applies `m` with incremental cache updates; returns the slot the node ended in.
  int apply(const Move& m);

  // Renumbers live slots densely (preserving their order).
  void compact();
  // Recomputes every cache from scratch.
  void refresh(Exec exec = Exec::Parallel);
  // Caches agree with their definitions within `tol` and the cover is valid.
  bool check_invariants(double tol = 1e-9, std::string* why = nullptr) const;

 private:
  void add_size(int size, int delta);

  const WeightedGraph* g_ = nullptr;
  std::vector<int> assign_;
  std::vector<std::vector<int>> members_;
  std::vector<int> position_;
  std::vector<double> eps_;
  std::vector<double> mu_;
  std::vector<double> strength_;
  std::map<int, int> sizes_;  // cluster size -> number of clusters
  double mq_ = 0.0;
  int live_ = 0;
};

// From-scratch MQ of a labelling.
double mq(const WeightedGraph& g, const std::vector<int>& labels);
QualityReport quality_of(const WeightedGraph& g, const std::vector<int>& labels);

// Definitional serial versions used to check the cached/parallel paths.
namespace reference {
double mq(const WeightedGraph& g, const std::vector<int>& labels);
std::vector<std::vector<double>> affinity_matrix(const Partition& p);
}  // namespace reference

}  // namespace archrec
