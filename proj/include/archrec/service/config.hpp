#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "archrec/clustering/seeds.hpp"
#include "archrec/similarity/similarity.hpp"

namespace archrec {

// Every knob of an analysis run. Loaded from JSON, then overridden by CLI flags.
struct RunConfig {
  std::vector<std::string> sources;
  std::string call_edges;  // optional tab-separated call file
  std::string scoping;     // optional scoping rules file
  bool auto_factors = false;
  SignificanceFactors factors;
  double temperature = 1000.0;
  double cooling = 0.7;
  std::vector<std::string> seeds = {"CC", "INHERIT", "PACKAGE", "RANDOM", "KMEANS", "CLIQUE"};
  std::uint64_t rng_seed = 42;
  double borderline_tau = 0.9;
  int label_k = 5;
  double mapping_threshold = 0.1;
  double epsilon_stop = 1e-6;
  double alpha = 0.6;
  double beta = 0.4;
  std::string stemmer = "porter";
  bool outlier_elimination = false;
  int max_iterations = 10000;
  double audit_rate = 0.0;
  int threads = 0;
  std::string output = "archrec-out";

  // Throws ConfigError naming the offending key and value.
  void validate() const;
  std::vector<SeedStrategy> seed_strategies() const;

  nlohmann::json to_json() const;
  // Missing keys keep their defaults; relative paths are resolved against `base`.
  static RunConfig from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
  static RunConfig load(const std::filesystem::path& path);

  // Hash of everything that influences results (the output directory does not).
  std::string fingerprint() const;
};

}  // namespace archrec
