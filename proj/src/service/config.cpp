#include "archrec/service/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "archrec/architecture/snapshot.hpp"
#include "archrec/core/error.hpp"
#include "archrec/ingest/text.hpp"

namespace archrec {

using nlohmann::json;

namespace {

std::string show(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("config '" + key + "': " + what);
}

}  // namespace

void RunConfig::validate() const {
  require(!sources.empty(), "sources", "at least one source root is required");
  if (!auto_factors) factors.validate();
  require(temperature > 0.0, "temperature", "must be positive, got " + show(temperature));
  require(cooling > 0.0 && cooling <= 1.0, "cooling", "must lie in (0, 1], got " + show(cooling));
  require(!seeds.empty(), "seeds", "at least one seed strategy is required");
  seed_strategies();
  require(borderline_tau >= 0.0, "borderlineTau", "must be non-negative, got " + show(borderline_tau));
  require(label_k >= 1, "labelSize", "must be at least 1, got " + std::to_string(label_k));
  require(mapping_threshold >= 0.0, "mappingThreshold", "must be non-negative, got " + show(mapping_threshold));
  require(epsilon_stop > 0.0, "epsilonStop", "must be positive, got " + show(epsilon_stop));
  require(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0 && std::abs(alpha + beta - 1.0) <= 1e-9,
          "alpha/beta", "must lie in [0, 1] and sum to 1, got alpha=" + show(alpha) + " beta=" + show(beta));
  try {
    make_stemmer(stemmer);
  } catch (const std::exception&) {
    throw ConfigError("config 'stemmer': unknown stemmer '" + stemmer + "'");
  }
  require(max_iterations > 0, "maxIterations", "must be positive");
  require(audit_rate >= 0.0 && audit_rate <= 1.0, "auditRate", "must lie in [0, 1], got " + show(audit_rate));
  require(threads >= 0, "threads", "must be non-negative");
  require(!output.empty(), "output", "an output directory is required");
}

std::vector<SeedStrategy> RunConfig::seed_strategies() const {
  std::vector<SeedStrategy> out;
  for (const auto& s : seeds) {
    try {
      out.push_back(parse_seed(s));
    } catch (const std::exception&) {
      throw ConfigError("config 'seeds': unknown seed strategy '" + s + "'");
    }
  }
  return out;
}

json RunConfig::to_json() const {
  return {{"sources", sources},
          {"callEdges", call_edges},
          {"scoping", scoping},
          {"factors", auto_factors ? json("auto") : factors.to_json()},
          {"temperature", temperature},
          {"cooling", cooling},
          {"seeds", seeds},
          {"rngSeed", rng_seed},
          {"borderlineTau", borderline_tau},
          {"labelSize", label_k},
          {"mappingThreshold", mapping_threshold},
          {"epsilonStop", epsilon_stop},
          {"alpha", alpha},
          {"beta", beta},
          {"stemmer", stemmer},
          {"outlierElimination", outlier_elimination},
          {"maxIterations", max_iterations},
          {"auditRate", audit_rate},
          {"threads", threads},
          {"output", output}};
}

RunConfig RunConfig::from_json(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  auto resolve = [&](const std::string& p) {
    if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) return p;
    return (base / p).lexically_normal().string();
  };
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "sources") {
        c.sources.clear();
        for (const auto& s : value) c.sources.push_back(resolve(s.get<std::string>()));
      } else if (key == "callEdges") {
        c.call_edges = resolve(value.get<std::string>());
      } else if (key == "scoping") {
        c.scoping = resolve(value.get<std::string>());
      } else if (key == "factors") {
        if (value.is_string()) {
          if (value.get<std::string>() != "auto")
            throw ConfigError("config 'factors': expected \"auto\" or an object of six factors");
          c.auto_factors = true;
        } else {
          c.auto_factors = false;
          c.factors = SignificanceFactors::from_json(value);
        }
      } else if (key == "temperature") {
        c.temperature = value.get<double>();
      } else if (key == "cooling") {
        c.cooling = value.get<double>();
      } else if (key == "seeds") {
        c.seeds = value.get<std::vector<std::string>>();
      } else if (key == "rngSeed") {
        c.rng_seed = value.get<std::uint64_t>();
      } else if (key == "borderlineTau") {
        c.borderline_tau = value.get<double>();
      } else if (key == "labelSize") {
        c.label_k = value.get<int>();
      } else if (key == "mappingThreshold") {
        c.mapping_threshold = value.get<double>();
      } else if (key == "epsilonStop") {
        c.epsilon_stop = value.get<double>();
      } else if (key == "alpha") {
        c.alpha = value.get<double>();
      } else if (key == "beta") {
        c.beta = value.get<double>();
      } else if (key == "stemmer") {
        c.stemmer = value.get<std::string>();
      } else if (key == "outlierElimination") {
        c.outlier_elimination = value.get<bool>();
      } else if (key == "maxIterations") {
        c.max_iterations = value.get<int>();
      } else if (key == "auditRate") {
        c.audit_rate = value.get<double>();
      } else if (key == "threads") {
        c.threads = value.get<int>();
      } else if (key == "output") {
        c.output = resolve(value.get<std::string>());
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw ConfigError("config '" + key + "': " + e.what());
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return from_json(j, path.parent_path());
}

std::string RunConfig::fingerprint() const {
  json j = to_json();
  j.erase("output");
  j.erase("threads");
  return fnv1a_hex(j.dump());
}

}  // namespace archrec
