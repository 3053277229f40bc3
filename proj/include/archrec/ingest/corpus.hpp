#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "archrec/core/exec.hpp"
#include "archrec/ingest/dependency.hpp"
#include "archrec/ingest/entity.hpp"
#include "archrec/ingest/scoping.hpp"
#include "archrec/ingest/text.hpp"

namespace archrec {

// Everything the later stages need, immutable after ingestion.
struct Corpus {
  std::vector<CodeEntity> entities;  // business layer, id == index
  std::map<Layer, std::vector<CodeEntity>> excluded;
  std::vector<int> original_ids;
  std::vector<TokenBag> text;  // IR tokens per entity
  DependencyGraph dependencies;
  std::vector<SideEdge> cross_layer;
  std::vector<UnresolvedCall> unresolved;
  std::vector<std::string> warnings;
  std::string stemmer = "porter";

  std::size_t size() const { return entities.size(); }
  int find(const std::string& name) const;  // qualified or simple name, -1 if absent

  bool operator==(const Corpus&) const = default;
};

struct IngestOptions {
  std::vector<std::filesystem::path> sources;
  std::optional<std::filesystem::path> call_edges;  // replaces source-level call resolution
  ScopingRules rules;
};

// Scoping, per-entity text extraction and dependency construction over already
// scanned entities. Entity ids are assigned from input order.
Corpus assemble_corpus(std::vector<CodeEntity> entities, const std::vector<CallFact>& facts,
                       const ScopingRules& rules, const TextPipeline& pipeline,
                       Exec exec = Exec::Parallel);

Corpus ingest_corpus(const IngestOptions& options, const TextPipeline& pipeline);

nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_corpus(const std::filesystem::path& path);

}  // namespace archrec
