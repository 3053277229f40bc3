#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "archrec/clustering/search.hpp"
#include "archrec/ingest/corpus.hpp"
#include "archrec/similarity/feature_matrix.hpp"
#include "archrec/similarity/similarity.hpp"

namespace archrec {

struct PortfolioApp {
  std::string name;
  Corpus corpus;
};

struct AppProfiles {
  std::vector<std::string> names;
  FeatureMatrix text_raw;  // one row per app: summed IR-token counts
  FeatureMatrix text;      // idf over every class of every app
  FeatureMatrix names_raw;
  FeatureMatrix name_concepts;
  DependencyGraph calls;  // app-level call edges, methods named "Owner.method"
  std::vector<int> public_method_counts;

  std::size_t size() const { return names.size(); }
};

// Giant vectors per application with portfolio-wide idf, plus the calls from
// one application's classes into public methods of another's. Throws ConfigError
// for fewer than two applications.
AppProfiles build_app_profiles(const std::vector<PortfolioApp>& apps);

struct AppSimilarities {
  SimilarityMatrix textual;
  SimilarityMatrix class_names;
  SimilarityMatrix structural;
  WeightedGraph combined;
  double w_text = 0.0, w_class = 0.0, w_structural = 0.0;
};

// Textual, class-name and structural similarity, fused with the three matching
// factors renormalized to sum 1.
AppSimilarities app_similarity(const AppProfiles& profiles, const SignificanceFactors& factors);

// The class-level search over apps, with the structural seed strategies.
SearchResult cluster_apps(const WeightedGraph& g, SearchConfig config);

nlohmann::json portfolio_report(const AppProfiles& profiles, const AppSimilarities& sims, const SearchResult& r);

}  // namespace archrec
