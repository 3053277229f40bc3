#include "archrec/service/portfolio_run.hpp"

#include <fstream>

#include "archrec/core/error.hpp"
#include "archrec/portfolio/portfolio.hpp"
#include "archrec/service/pipeline.hpp"

namespace archrec {

using nlohmann::json;

PortfolioManifest PortfolioManifest::from_json(const json& j, const std::filesystem::path& base) {
  auto resolve = [&](const std::string& p) {
    if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) return p;
    return (base / p).lexically_normal().string();
  };
  PortfolioManifest m;
  try {
    for (const auto& a : j.at("apps")) {
      App app;
      app.name = a.at("name").get<std::string>();
      for (const auto& s : a.at("sources")) app.sources.push_back(resolve(s.get<std::string>()));
      if (a.contains("callEdges")) app.call_edges = resolve(a["callEdges"].get<std::string>());
      if (a.contains("scoping")) app.scoping = resolve(a["scoping"].get<std::string>());
      m.apps.push_back(std::move(app));
    }
    if (j.contains("factors")) m.factors = SignificanceFactors::from_json(j["factors"]);
    if (j.contains("rngSeed")) m.rng_seed = j["rngSeed"].get<std::uint64_t>();
    if (j.contains("stemmer")) m.stemmer = j["stemmer"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("portfolio manifest: ") + e.what());
  }
  if (m.apps.size() < 2) throw ConfigError("portfolio requires >= 2 apps");
  return m;
}

PortfolioManifest PortfolioManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read portfolio manifest " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

json run_portfolio(const PortfolioManifest& manifest) {
  if (manifest.apps.size() < 2) throw ConfigError("portfolio requires >= 2 apps");
  const TextPipeline pipeline = text_pipeline(manifest.stemmer);
  std::vector<PortfolioApp> apps;
  for (const auto& a : manifest.apps) {
    IngestOptions options;
    for (const auto& s : a.sources) options.sources.emplace_back(s);
    if (!a.call_edges.empty()) options.call_edges = a.call_edges;
    if (!a.scoping.empty()) options.rules = ScopingRules::load(a.scoping);
    apps.push_back({a.name, ingest_corpus(options, pipeline)});
  }
  const AppProfiles profiles = build_app_profiles(apps);
  const AppSimilarities sims = app_similarity(profiles, manifest.factors);
  SearchConfig cfg;
  cfg.seed = manifest.rng_seed;
  const SearchResult r = cluster_apps(sims.combined, cfg);
  return portfolio_report(profiles, sims, r);
}

}  // namespace archrec
