#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "archrec/architecture/hierarchy.hpp"
#include "archrec/architecture/views.hpp"
#include "archrec/ingest/corpus.hpp"
#include "archrec/similarity/features.hpp"

namespace archrec {

inline constexpr int kSnapshotSchemaVersion = 1;

// What every derived view is computed from. Not owned.
struct AnalysisInputs {
  const Corpus* corpus = nullptr;
  const FeatureSet* features = nullptr;
  const SimilarityMatrix* combined = nullptr;
};

struct ArchitectureOptions {
  double borderline_tau = 0.9;
  int label_k = 5;
  SearchConfig hierarchy;  // seed, annealing and stop settings for the upper levels
};

struct SeedSummary {
  std::string strategy;
  QualityReport seed_quality;
  QualityReport quality;
  int iterations = 0;
  int sn_acceptances = 0;
  bool close_to_optimal = false;
  bool marked = false;
  bool early_return = false;

  bool operator==(const SeedSummary&) const = default;
};

std::vector<SeedSummary> summarize_search(const SearchResult& r);

struct SnapshotEntity {
  std::string name;
  std::string package;

  std::string qualified_name() const { return package.empty() ? name : package + "." + name; }
  bool operator==(const SnapshotEntity&) const = default;
};

// Excluded from content comparisons and determinism checks.
struct SnapshotMeta {
  std::string created_at;
  std::string updated_at;
  int revision = 0;

  bool operator==(const SnapshotMeta&) const = default;
};

struct ArchitectureSnapshot {
  int schema_version = kSnapshotSchemaVersion;
  std::string fingerprint;
  std::string corpus_ref;
  SnapshotMeta meta;
  std::vector<SnapshotEntity> entities;
  std::vector<int> labels;  // dense cluster id per entity
  QualityReport quality;
  std::vector<ClusterInterface> interfaces;
  InteractionGraph interactions;
  std::vector<ClusterLabel> cluster_labels;
  BorderlineReport borderline;
  std::vector<BucketedEdge> edges;
  std::vector<LayerUsage> cross_layer;
  Hierarchy hierarchy;
  std::vector<SeedSummary> search;
  int label_k = 5;
  std::vector<std::string> warnings;

  int cluster_count() const;
  bool operator==(const ArchitectureSnapshot&) const = default;
};

// Views, quality and hierarchy of a dense labelling. Meta is left empty.
ArchitectureSnapshot derive_snapshot(const AnalysisInputs& in, const std::vector<int>& labels,
                                     const ArchitectureOptions& options);

// Target kNewCluster opens a cluster.
struct ReassignMove {
  int entity = -1;
  int target = kNewCluster;

  bool operator==(const ReassignMove&) const = default;
};

struct RejectedMove {
  ReassignMove move;
  std::string reason;
};

struct ReassignResult {
  ArchitectureSnapshot snapshot;
  std::vector<ReassignMove> applied;  // with the cluster ids the moves were made against
  std::vector<RejectedMove> rejected;
};

// Applies the valid moves in order, drops emptied clusters (the remaining ids keep
// their relative order), rederives every view and bumps meta.
ReassignResult reassign_and_refresh(const AnalysisInputs& in, const ArchitectureSnapshot& snapshot,
                                    const std::vector<ReassignMove>& moves, const ArchitectureOptions& options);

// ISO-8601 UTC, second precision.
std::string utc_timestamp();

// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

// "Owner.method" for GraphML and API listings.
std::string method_display(const ArchitectureSnapshot& s, const MethodRef& m);

nlohmann::json snapshot_to_json(const ArchitectureSnapshot& s);
ArchitectureSnapshot snapshot_from_json(const nlohmann::json& j);
// The snapshot without meta, the part covered by determinism.
nlohmann::json snapshot_content(const ArchitectureSnapshot& s);

void save_snapshot(const ArchitectureSnapshot& s, const std::filesystem::path& path);
ArchitectureSnapshot load_snapshot(const std::filesystem::path& path);

// JSON fragments shared with the HTTP API.
nlohmann::json cluster_to_json(const ArchitectureSnapshot& s, int cluster);
nlohmann::json interactions_to_json(const ArchitectureSnapshot& s);
nlohmann::json borderline_to_json(const ArchitectureSnapshot& s);
nlohmann::json hierarchy_to_json(const Hierarchy& h);
nlohmann::json quality_to_json(const QualityReport& q);

}  // namespace archrec
