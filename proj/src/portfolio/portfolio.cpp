#include "archrec/portfolio/portfolio.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "archrec/core/error.hpp"
#include "archrec/ingest/text.hpp"
#include "archrec/similarity/features.hpp"

namespace archrec {

namespace {

using Rows = std::vector<std::map<std::string, double>>;

// Sums class rows per app and scales each column by its class-level idf.
std::pair<FeatureMatrix, FeatureMatrix> giant_rows(const FeatureMatrix& classes, const std::vector<int>& app_of,
                                                   std::size_t apps) {
  const auto idf = idf_weights(classes);
  Rows raw(apps), weighted(apps);
  for (std::size_t r = 0; r < classes.rows(); ++r)
    for (const auto& e : classes.row(r)) raw[app_of[r]][classes.vocabulary()[e.col]] += e.value;
  for (std::size_t a = 0; a < apps; ++a)
    for (const auto& [word, count] : raw[a]) weighted[a][word] = count * idf[classes.column(word)];
  return {FeatureMatrix::from_rows(raw), FeatureMatrix::from_rows(weighted)};
}

std::string last_segment(const std::string& name) {
  const auto dot = name.rfind('.');
  return dot == std::string::npos ? name : name.substr(dot + 1);
}

}  // namespace

AppProfiles build_app_profiles(const std::vector<PortfolioApp>& apps) {
  if (apps.size() < 2) throw ConfigError("portfolio requires >= 2 apps");
  AppProfiles p;
  std::vector<int> app_of;
  Rows text_rows;
  std::vector<std::vector<std::string>> concept_rows;
  for (std::size_t a = 0; a < apps.size(); ++a) {
    p.names.push_back(apps[a].name);
    const Corpus& c = apps[a].corpus;
    int methods = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      app_of.push_back(static_cast<int>(a));
      std::map<std::string, double> row;
      for (const auto& [token, count] : c.text[i]) row[token] = count;
      text_rows.push_back(std::move(row));
      concept_rows.push_back(extract_name_concepts(c.entities[i].name));
      methods += static_cast<int>(c.entities[i].public_methods.size());
    }
    p.public_method_counts.push_back(methods);
  }
  std::tie(p.text_raw, p.text) = giant_rows(FeatureMatrix::from_rows(text_rows), app_of, apps.size());
  std::tie(p.names_raw, p.name_concepts) =
      giant_rows(FeatureMatrix::from_concepts(concept_rows), app_of, apps.size());

  p.calls.node_count = static_cast<int>(apps.size());
  for (std::size_t a = 0; a < apps.size(); ++a) {
    for (const auto& u : apps[a].corpus.unresolved) {
      for (std::size_t b = 0; b < apps.size(); ++b) {
        if (b == a) continue;
        const Corpus& other = apps[b].corpus;
        int target = -1;
        for (const auto& e : other.entities)
          if (e.qualified_name() == u.type_name) target = e.id;
        if (target < 0)
          for (const auto& e : other.entities)
            if (target < 0 && e.name == last_segment(u.type_name)) target = e.id;
        if (target < 0) continue;
        const CodeEntity& callee = other.entities[target];
        const MethodSignature* m = callee.find_public_method(u.method, u.arity);
        if (!m) continue;
        MethodSignature named = *m;
        named.name = callee.qualified_name() + "." + m->name;
        p.calls.edges.push_back({static_cast<int>(a), static_cast<int>(b), std::move(named)});
        break;
      }
    }
  }
  return p;
}

AppSimilarities app_similarity(const AppProfiles& profiles, const SignificanceFactors& factors) {
  AppSimilarities s;
  const double t = factors.alpha[static_cast<int>(Feature::Textual)];
  const double c = factors.alpha[static_cast<int>(Feature::ClassName)];
  const double d = factors.alpha[static_cast<int>(Feature::Structural)];
  const double sum = t + c + d;
  if (!(t >= 0 && c >= 0 && d >= 0) || !(sum > 0.0))
    throw ConfigError("portfolio needs non-negative textual, class and structural factors with a positive sum, got " +
                      factors.describe());
  s.w_text = t / sum;
  s.w_class = c / sum;
  s.w_structural = d / sum;
  s.textual = pairwise_cosine(profiles.text);
  s.class_names = pairwise_minmax(profiles.name_concepts);
  s.structural = structural_similarity(profiles.calls, profiles.public_method_counts);
  const std::size_t n = profiles.size();
  s.combined = WeightedGraph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const double w = s.w_text * s.textual(u, v) + s.w_class * s.class_names(u, v) +
                       s.w_structural * s.structural(u, v);
      s.combined.set(u, v, std::clamp(w, 0.0, 1.0));
    }
  return s;
}

SearchResult cluster_apps(const WeightedGraph& g, SearchConfig config) {
  config.strategies = structural_seed_strategies();
  config.outlier_elimination = false;
  SeedContext ctx;
  ctx.graph = &g;
  ctx.exec = config.exec;
  return search(ctx, config);
}

nlohmann::json portfolio_report(const AppProfiles& profiles, const AppSimilarities& sims, const SearchResult& r) {
  nlohmann::json apps = nlohmann::json::array();
  for (std::size_t a = 0; a < profiles.size(); ++a)
    apps.push_back({{"id", a},
                    {"name", profiles.names[a]},
                    {"cluster", r.labels.at(a)},
                    {"publicMethods", profiles.public_method_counts[a]}});
  nlohmann::json calls = nlohmann::json::array();
  for (const auto& e : profiles.calls.edges)
    calls.push_back({{"caller", e.caller}, {"callee", e.callee}, {"method", e.method.name}});
  return {{"schemaVersion", 1},
          {"apps", apps},
          {"factors", {{"textual", sims.w_text}, {"class", sims.w_class}, {"structural", sims.w_structural}}},
          {"similarity",
           {{"textual", matrix_triplets(sims.textual)},
            {"class", matrix_triplets(sims.class_names)},
            {"structural", matrix_triplets(sims.structural)},
            {"combined", matrix_triplets(sims.combined)}}},
          {"crossAppCalls", calls},
          {"quality", {{"mq", r.quality.mq}, {"mqc", r.quality.mqc}, {"diff", r.quality.diff},
                       {"iso", r.quality.iso}, {"clusterCount", r.quality.cluster_count}}}};
}

}  // namespace archrec
