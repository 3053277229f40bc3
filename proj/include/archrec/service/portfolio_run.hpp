#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "archrec/service/config.hpp"

namespace archrec {

struct PortfolioManifest {
  struct App {
    std::string name;
    std::vector<std::string> sources;
    std::string call_edges;
    std::string scoping;
  };
  std::vector<App> apps;
  SignificanceFactors factors;
  std::uint64_t rng_seed = 42;
  std::string stemmer = "porter";

  // {"apps": [{"name", "sources", "callEdges"?, "scoping"?}], "factors"?, "rngSeed"?, "stemmer"?};
  // relative paths resolve against the manifest's directory.
  static PortfolioManifest from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
  static PortfolioManifest load(const std::filesystem::path& path);
};

// Ingests every application, then profiles, fuses and clusters them.
nlohmann::json run_portfolio(const PortfolioManifest& manifest);

}  // namespace archrec
