#pragma once

#include <filesystem>
#include <string>

#include "archrec/architecture/snapshot.hpp"
#include "archrec/clustering/search.hpp"
#include "archrec/ingest/corpus.hpp"
#include "archrec/retrieval/retrieval.hpp"
#include "archrec/service/config.hpp"
#include "archrec/similarity/features.hpp"
#include "archrec/similarity/similarity.hpp"

namespace archrec {

// One analysed application: everything the snapshot views, queries and
// reassignments are computed from.
struct Analysis {
  RunConfig config;
  Corpus corpus;
  FeatureSet features;
  SignificanceFactors factors;  // resolved ("auto" replaced by the suggestion)
  WeightedGraph combined;
  SearchResult search;
  ArchitectureSnapshot snapshot;
  RetrievalIndex index;

  AnalysisInputs inputs() const { return {&corpus, &features, &combined}; }
  ArchitectureOptions architecture_options() const;
  SearchConfig search_config() const;
  QueryOptions query_options() const;
};

TextPipeline text_pipeline(const std::string& stemmer);

// Ingestion through snapshot derivation, in memory. `six` receives the
// per-feature matrices when non-null.
Analysis analyze(const RunConfig& cfg, FeatureSimilarities* six = nullptr);

// Validates, analyses and writes config.json, corpus.json, similarity.json,
// snapshot.json, interactions.graphml and trace.log into cfg.output.
Analysis run_pipeline(const RunConfig& cfg);

// Rebuilds an Analysis from a run_pipeline output directory.
Analysis load_analysis(const std::filesystem::path& dir);

std::string graphml_document(const ArchitectureSnapshot& s);
// Throws std::runtime_error when the file cannot be written.
void export_graphml(const ArchitectureSnapshot& s, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace archrec
