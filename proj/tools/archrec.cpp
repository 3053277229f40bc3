#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "archrec/core/error.hpp"
#include "archrec/service/api.hpp"
#include "archrec/service/pipeline.hpp"
#include "archrec/service/portfolio_run.hpp"

using namespace archrec;
using nlohmann::json;

namespace {

// Flags that override RunConfig keys; unset flags leave the config file's values.
struct Overrides {
  std::optional<std::string> config;
  std::vector<std::string> sources;
  std::optional<std::string> call_edges, scoping, factors, seeds, stemmer, output;
  std::optional<double> temperature, cooling, tau, threshold, epsilon, alpha, beta, audit_rate;
  std::optional<std::uint64_t> rng_seed;
  std::optional<int> label_k, max_iterations, threads;
  bool outliers = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", config, "JSON run configuration");
    cmd->add_option("-s,--source", sources, "Java source root (repeatable)");
    cmd->add_option("--call-edges", call_edges, "Tab-separated call edge file");
    cmd->add_option("--scoping", scoping, "Scoping rules file");
    cmd->add_option("--factors", factors, "\"auto\" or six comma-separated factors");
    cmd->add_option("--temperature", temperature, "Initial annealing temperature");
    cmd->add_option("--cooling", cooling, "Annealing cooling constant");
    cmd->add_option("--seeds", seeds, "Comma-separated seed strategies");
    cmd->add_option("--rng-seed", rng_seed, "Random seed");
    cmd->add_option("--tau", tau, "Borderline ratio");
    cmd->add_option("--label-size", label_k, "Concepts per cluster label");
    cmd->add_option("--threshold", threshold, "Entity mapping threshold");
    cmd->add_option("--epsilon", epsilon, "Search stop threshold");
    cmd->add_option("--alpha", alpha, "VSM rank weight");
    cmd->add_option("--beta", beta, "Centroid rank weight");
    cmd->add_option("--stemmer", stemmer, "porter or identity");
    cmd->add_option("--max-iterations", max_iterations, "Climb iterations per seed");
    cmd->add_option("--threads", threads, "Kernel threads (0 = runtime default)");
    cmd->add_option("--audit-rate", audit_rate, "Fraction of move evaluations re-checked from scratch");
    cmd->add_flag("--outlier-elimination", outliers, "Replace the CC seed by the outlier elimination loop");
    cmd->add_option("-o,--output", output, "Output directory");
  }

  RunConfig resolve() const {
    RunConfig c = config ? RunConfig::load(*config) : RunConfig{};
    if (!sources.empty()) c.sources = sources;
    if (call_edges) c.call_edges = *call_edges;
    if (scoping) c.scoping = *scoping;
    if (factors) {
      if (*factors == "auto") {
        c.auto_factors = true;
      } else {
        std::stringstream in(*factors);
        std::string item;
        std::vector<double> values;
        while (std::getline(in, item, ',')) {
          try {
            values.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw ConfigError("--factors: '" + item + "' is not a number");
          }
        }
        if (values.size() != kFeatureCount) throw ConfigError("--factors expects six values or \"auto\"");
        c.auto_factors = false;
        std::copy(values.begin(), values.end(), c.factors.alpha.begin());
      }
    }
    if (temperature) c.temperature = *temperature;
    if (cooling) c.cooling = *cooling;
    if (seeds) {
      c.seeds.clear();
      std::stringstream in(*seeds);
      std::string item;
      while (std::getline(in, item, ',')) c.seeds.push_back(item);
    }
    if (rng_seed) c.rng_seed = *rng_seed;
    if (tau) c.borderline_tau = *tau;
    if (label_k) c.label_k = *label_k;
    if (threshold) c.mapping_threshold = *threshold;
    if (epsilon) c.epsilon_stop = *epsilon;
    if (alpha) c.alpha = *alpha;
    if (beta) c.beta = *beta;
    if (stemmer) c.stemmer = *stemmer;
    if (max_iterations) c.max_iterations = *max_iterations;
    if (threads) c.threads = *threads;
    if (audit_rate) c.audit_rate = *audit_rate;
    if (outliers) c.outlier_elimination = true;
    if (output) c.output = *output;
    return c;
  }
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

ApiResponse post(ArchitectureService& service, const std::string& path, const json& body) {
  return service.handle("POST", path, body.dump());
}

int report(const ApiResponse& r) {
  if (r.status == 200) {
    print(r.body);
    return 0;
  }
  std::cerr << "error (" << r.status << "): " << r.body.dump() << '\n';
  return r.status == 400 ? 1 : 3;
}

HttpServer* active_server = nullptr;

void on_signal(int) {
  if (active_server) active_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Architecture recovery for Java code bases"};
  app.require_subcommand(1);

  Overrides analyze_flags;
  auto* analyze_cmd = app.add_subcommand("analyze", "Ingest, cluster and write an analysis directory");
  analyze_flags.attach(analyze_cmd);

  std::string run_dir = "archrec-out";
  std::string graphml_out;
  auto* export_cmd = app.add_subcommand("export-graphml", "Write the interaction graph of a run as GraphML");
  export_cmd->add_option("-r,--run", run_dir, "Analysis directory")->capture_default_str();
  export_cmd->add_option("-o,--output", graphml_out, "GraphML file")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API over a run");
  serve_cmd->add_option("-r,--run", run_dir, "Analysis directory")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("-p,--port", port, "Port (0 picks a free one)")->capture_default_str();

  std::string query_text;
  int limit = 5;
  std::optional<double> q_alpha, q_beta;
  auto* query_cmd = app.add_subcommand("query", "Rank classes for a free-text query");
  query_cmd->add_option("-r,--run", run_dir, "Analysis directory")->capture_default_str();
  query_cmd->add_option("text", query_text, "Query text")->required();
  query_cmd->add_option("-n,--limit", limit, "Classes shown as the answer")->capture_default_str();
  query_cmd->add_option("--alpha", q_alpha, "VSM rank weight");
  query_cmd->add_option("--beta", q_beta, "Centroid rank weight");

  std::vector<std::string> descriptions;
  std::string descriptions_file;
  std::optional<double> map_threshold;
  auto* map_cmd = app.add_subcommand("map-entities", "Map functional entity descriptions to clusters");
  map_cmd->add_option("-r,--run", run_dir, "Analysis directory")->capture_default_str();
  map_cmd->add_option("descriptions", descriptions, "Descriptions");
  map_cmd->add_option("-f,--file", descriptions_file, "File with one description per line");
  map_cmd->add_option("--threshold", map_threshold, "Minimum similarity");

  std::string manifest;
  std::string portfolio_out;
  auto* portfolio_cmd = app.add_subcommand("portfolio", "Cluster the applications of a portfolio");
  portfolio_cmd->add_option("-m,--manifest", manifest, "Portfolio manifest (JSON)")->required();
  portfolio_cmd->add_option("-o,--output", portfolio_out, "Report file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (analyze_cmd->parsed()) {
      const Analysis a = run_pipeline(analyze_flags.resolve());
      const auto& q = a.snapshot.quality;
      std::cout << "classes " << a.corpus.size() << ", clusters " << q.cluster_count << ", MQ " << q.mq << ", MQC "
                << q.mqc << ", hierarchy levels " << a.snapshot.hierarchy.levels.size() << "\n"
                << "wrote " << a.config.output << "\n";
      for (const auto& w : a.corpus.warnings) std::cerr << "warning: " << w << '\n';
      return 0;
    }
    if (export_cmd->parsed()) {
      export_graphml(load_snapshot(std::filesystem::path(run_dir) / "snapshot.json"), graphml_out);
      return 0;
    }
    if (serve_cmd->parsed()) {
      ArchitectureService service(load_analysis(run_dir));
      HttpServer server(service);
      const int bound = server.bind(host, port);
      std::cout << "serving " << run_dir << " on http://" << host << ":" << bound << std::endl;
      active_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen();
      return 0;
    }
    if (query_cmd->parsed()) {
      ArchitectureService service(load_analysis(run_dir));
      json body = {{"text", query_text}, {"limit", limit}};
      if (q_alpha) body["alpha"] = *q_alpha;
      if (q_beta) body["beta"] = *q_beta;
      ApiResponse r = post(service, "/query", body);
      if (r.status == 422) {
        std::cerr << "unanswerable query: no usable words in \"" << query_text << "\"\n";
        return 1;
      }
      if (r.status == 200) r.body.erase("ranked");
      return report(r);
    }
    if (map_cmd->parsed()) {
      if (!descriptions_file.empty()) {
        std::ifstream in(descriptions_file);
        if (!in) throw ConfigError("cannot read " + descriptions_file);
        for (std::string line; std::getline(in, line);)
          if (!line.empty()) descriptions.push_back(line);
      }
      if (descriptions.empty()) throw ConfigError("map-entities needs descriptions or --file");
      ArchitectureService service(load_analysis(run_dir));
      json body = {{"descriptions", descriptions}};
      if (map_threshold) body["threshold"] = *map_threshold;
      return report(post(service, "/map-entities", body));
    }
    if (portfolio_cmd->parsed()) {
      const json out = run_portfolio(PortfolioManifest::load(manifest));
      if (portfolio_out.empty())
        print(out);
      else
        write_text_file(portfolio_out, out.dump(1) + "\n");
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const IngestError& e) {
    std::cerr << "ingest error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 3;
}
