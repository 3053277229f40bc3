#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "archrec/clustering/partition.hpp"
#include "archrec/clustering/seeds.hpp"
#include "archrec/core/rng.hpp"

namespace archrec {

enum class Objective { MQ, MQC };

struct AnnealingState {
  double temp = 1000.0;
  double cooling = 0.7;
  bool sn_tag = false;
};

// True iff mq_new < mq_old and a uniform draw falls below exp((mq_new - mq_old) / temp).
// No number is drawn for non-worsening moves.
bool sn_accept(double mq_new, double mq_old, const AnnealingState& s, Rng& rng);

// Sampled consistency checks of incremental move scores against a full recomputation.
struct AuditLog {
  std::uint64_t evaluations = 0;
  std::uint64_t audits = 0;
  std::uint64_t failures = 0;
  std::string first_failure;
};

struct ClimbOptions {
  Objective objective = Objective::MQC;
  Exec exec = Exec::Parallel;
  double audit_rate = 0.0;
  AuditLog* audit = nullptr;
  Rng* audit_rng = nullptr;
};

struct ClimbOutcome {
  bool bulk_moved = false;  // Phase A applied at least one move
  bool improved = false;    // objective went up
  bool sn_fired = false;    // a worsening neighbour was accepted
  int moves = 0;
};

// One ClimbHill step. Phase A moves nodes towards their most similar foreign
// cluster, greedily in order of (from, to) tallies, keeping only improving
// moves. If none applies, Phase B scans the 1-neighbourhood (every node to
// every other cluster and to a fresh one) for the steepest improvement, and
// may instead accept a worsening neighbour through sn_accept, cooling `s`.
ClimbOutcome climb_hill(Partition& p, AnnealingState& s, Rng& rng, const ClimbOptions& options = {});

struct InitiationResult {
  double density = 0.0;
  double edge_count = 0.0;
  std::vector<bool> close_to_optimal;
  int marked = -1;
};

// Flags seeds with 2 MQ - diff - iso > |P|; when the graph is dense
// (density > |E| / 2) the flagged seed with the highest MQ is marked.
InitiationResult initiation_test(const WeightedGraph& g, const std::vector<std::vector<int>>& seeds);

struct SearchConfig {
  std::vector<SeedStrategy> strategies = all_seed_strategies();
  double temperature = 1000.0;
  double cooling = 0.7;
  std::uint64_t seed = 0;
  double epsilon_stop = 1e-6;
  int max_iterations = 10000;
  Objective objective = Objective::MQC;
  bool initiation_test = true;
  double audit_rate = 0.0;
  Exec exec = Exec::Parallel;
  bool trace = false;
  // Replaces the CC seed by the result of the outlier elimination loop.
  bool outlier_elimination = false;
};

struct TraceLine {
  int seed = 0;
  int iteration = 0;
  double mq = 0.0;
  double mqc = 0.0;
  double temp = 0.0;
  bool sn_tag = false;
};

// "seed<TAB>iteration<TAB>mq<TAB>mqc<TAB>temp<TAB>snTag", numbers with %.10g.
std::string format_trace_line(const TraceLine& t);

struct SeedRun {
  SeedStrategy strategy = SeedStrategy::CC;
  std::vector<int> seed_labels;
  QualityReport seed_quality;
  bool close_to_optimal = false;
  bool marked = false;
  bool early_return = false;
  int iterations = 0;
  int sn_acceptances = 0;
  std::vector<int> labels;  // best partition reached from this seed
  QualityReport quality;
};

struct SearchResult {
  std::vector<int> labels;  // dense, first-appearance order
  QualityReport quality;
  int best_run = -1;
  std::vector<SeedRun> runs;
  InitiationResult initiation;
  AuditLog audit;
  std::vector<TraceLine> trace;
  std::vector<std::string> warnings;
};

SearchResult search(const SeedContext& ctx, const SearchConfig& config);

}  // namespace archrec
