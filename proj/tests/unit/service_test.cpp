#include <fstream>
#include <sstream>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "archrec/core/error.hpp"
#include "archrec/service/api.hpp"
#include "archrec/service/config.hpp"
#include "archrec/service/pipeline.hpp"
#include "archrec/service/portfolio_run.hpp"
#include "test_support.hpp"

using namespace archrec;
using nlohmann::json;
using testing_support::fixture;
using testing_support::fixture_config;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("archrec-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ARCHREC_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, Validation) {
  RunConfig c = fixture_config("shop");
  EXPECT_NO_THROW(c.validate());
  c.factors.alpha = {0.1, 0.2, 0.1, 0.2, 0.2, 0.1};
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(analyze(c), ConfigError);
  c = fixture_config("shop");
  c.seeds = {"CC", "BOGUS"};
  EXPECT_THROW(c.validate(), ConfigError);
  c = fixture_config("shop");
  c.cooling = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = fixture_config("shop");
  c.sources.clear();
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  RunConfig c = fixture_config("shop");
  c.rng_seed = 9;
  c.auto_factors = true;
  const RunConfig back = RunConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_THROW(RunConfig::from_json({{"temprature", 3}}), ConfigError);
  const RunConfig rel = RunConfig::from_json({{"sources", {"src"}}}, "/base");
  EXPECT_EQ(rel.sources[0], "/base/src");
}

TEST(Config, FingerprintIgnoresOutputAndThreads) {
  RunConfig a = fixture_config("shop"), b = a;
  b.output = "/elsewhere";
  b.threads = 3;
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
  b.rng_seed = 43;
  EXPECT_NE(a.fingerprint(), b.fingerprint());
}

TEST(Pipeline, ShopPartitionIsTheExhaustiveOptimum) {
  const Analysis& a = testing_support::shop_analysis();
  EXPECT_EQ(a.snapshot.labels, (std::vector<int>{0, 0, 0, 1, 1, 1}));
  double best = -1e300;
  for (int mask = 0; mask < 64; ++mask) {
    std::vector<int> labels(6);
    for (int v = 0; v < 6; ++v) labels[v] = (mask >> v) & 1;
    best = std::max(best, quality_of(a.combined, labels).mqc);
  }
  EXPECT_GE(a.search.quality.mqc, best - 1e-9);
}

TEST(Pipeline, WritesAndReloadsRun) {
  RunConfig cfg = fixture_config("shop");
  cfg.output = scratch("run").string();
  const Analysis a = run_pipeline(cfg);
  for (const char* f : {"config.json", "corpus.json", "similarity.json", "snapshot.json", "interactions.graphml", "trace.log"})
    EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(cfg.output) / f)) << f;
  const Analysis back = load_analysis(cfg.output);
  EXPECT_EQ(back.snapshot, a.snapshot);
  EXPECT_EQ(back.corpus, a.corpus);
  EXPECT_EQ(back.factors, a.factors);
  for (std::size_t i = 0; i < a.combined.cells().size(); ++i)
    EXPECT_NEAR(back.combined.cells()[i], a.combined.cells()[i], 1e-15);
  EXPECT_THROW(load_analysis(scratch("missing")), ConfigError);
}

TEST(Pipeline, DeterministicSnapshots) {
  RunConfig a = fixture_config("shop"), b = a;
  a.output = scratch("det-a").string();
  b.output = scratch("det-b").string();
  run_pipeline(a);
  run_pipeline(b);
  auto content = [](const std::string& dir) {
    json j = json::parse(slurp(std::filesystem::path(dir) / "snapshot.json"));
    j.erase("meta");
    return j.dump();
  };
  EXPECT_EQ(content(a.output), content(b.output));
  EXPECT_EQ(slurp(std::filesystem::path(a.output) / "trace.log"), slurp(std::filesystem::path(b.output) / "trace.log"));
}

TEST(GraphML, GoldenFileAndReexport) {
  const ArchitectureSnapshot& s = testing_support::shop_analysis().snapshot;
  EXPECT_EQ(graphml_document(s), slurp(fixture("shop_interactions.graphml")));
  const auto path = scratch("graphml");
  std::filesystem::create_directories(path);
  export_graphml(s, path / "a.graphml");
  export_graphml(s, path / "b.graphml");
  EXPECT_EQ(slurp(path / "a.graphml"), slurp(path / "b.graphml"));
}

TEST(GraphML, EdgelessGraphHasNodesOnly) {
  ArchitectureSnapshot s = testing_support::shop_analysis().snapshot;
  s.interactions.edges.clear();
  const std::string doc = graphml_document(s);
  EXPECT_EQ(doc.find("<edge"), std::string::npos);
  EXPECT_NE(doc.find("<node id=\"1\">"), std::string::npos);
}

TEST(Api, ReadRoutes) {
  ArchitectureService service(testing_support::shop_analysis());
  const ApiResponse clusters = service.handle("GET", "/clusters", "");
  EXPECT_EQ(clusters.status, 200);
  EXPECT_EQ(clusters.body.at("clusterCount"), service.snapshot()->cluster_count());
  EXPECT_EQ(service.handle("GET", "/clusters/1", "").body.at("size"), 3);
  EXPECT_EQ(service.handle("GET", "/clusters/9", "").status, 404);
  EXPECT_EQ(service.handle("GET", "/clusters/x", "").status, 404);
  EXPECT_EQ(service.handle("GET", "/interactions", "").body.at("edges").size(), 1u);
  EXPECT_EQ(service.handle("GET", "/borderline", "").status, 200);
  EXPECT_TRUE(service.handle("GET", "/hierarchy", "").body.at("levels").is_array());
  EXPECT_EQ(service.handle("GET", "/nowhere", "").status, 404);
  EXPECT_EQ(service.handle("POST", "/clusters", "{}").status, 405);
}

TEST(Api, MalformedBodiesGetFieldDiagnostics) {
  ArchitectureService service(testing_support::shop_analysis());
  const ApiResponse bad = service.handle("POST", "/reassign", "{not json");
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body.at("fields")[0].at("field"), "body");
  const ApiResponse missing = service.handle("POST", "/reassign", R"({"moves":[{"entity":1}]})");
  EXPECT_EQ(missing.status, 400);
  EXPECT_EQ(missing.body.at("fields")[0].at("field"), "moves[0].cluster");
  EXPECT_EQ(service.handle("POST", "/query", R"({"text":3})").status, 400);
  EXPECT_EQ(service.handle("POST", "/query", R"({"text":"tax","alpha":0.9})").status, 400);
  EXPECT_EQ(service.handle("POST", "/map-entities", R"({"descriptions":[1]})").status, 400);
}

TEST(Api, ReassignThenInverseRestoresSnapshot) {
  ArchitectureService service(testing_support::shop_analysis());
  const json original = snapshot_content(*service.snapshot());
  const ApiResponse there =
      service.handle("POST", "/reassign", R"({"moves":[{"entity":"TaxCalculator","cluster":1}]})");
  ASSERT_EQ(there.status, 200);
  EXPECT_EQ(there.body.at("applied").size(), 1u);
  EXPECT_EQ(there.body.at("revision"), 1);
  const ApiResponse back = service.handle("POST", "/reassign", R"({"moves":[{"entity":2,"cluster":0}]})");
  ASSERT_EQ(back.status, 200);
  const ApiResponse snap = service.handle("GET", "/snapshot", "");
  json content = snap.body;
  content.erase("meta");
  json expected = original;
  EXPECT_EQ(content, expected);
  EXPECT_EQ(snap.body.at("meta").at("revision"), 2);

  const ApiResponse unknown = service.handle("POST", "/reassign", R"({"moves":[{"entity":"Nobody","cluster":0}]})");
  EXPECT_EQ(unknown.status, 200);
  EXPECT_EQ(unknown.body.at("rejected").size(), 1u);
}

TEST(Api, QueryRanksTheSchedulerFirst) {
  static const Analysis sched = analyze(fixture_config("sched"));
  ArchitectureService service(sched);
  const ApiResponse r = service.handle("POST", "/query", R"({"text":"schedule process"})");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body.at("top")[0].at("name"), "jobs.JobScheduler");
  EXPECT_LE(r.body.at("top").size(), 5u);
  EXPECT_EQ(service.handle("POST", "/query", R"({"text":"the of"})").status, 422);
  const ApiResponse m = service.handle("POST", "/map-entities", R"({"descriptions":["monthly account report"]})");
  ASSERT_EQ(m.status, 200);
  EXPECT_FALSE(m.body.at("mappings")[0].at("clusters").empty());
}

TEST(Api, RealHttpRoundTrip) {
  ArchitectureService service(testing_support::shop_analysis());
  HttpServer server(service);
  const int port = server.bind("127.0.0.1", 0);
  std::thread loop([&] { server.listen(); });
  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto get = client.Get("/clusters");
  ASSERT_TRUE(get);
  EXPECT_EQ(get->status, 200);
  EXPECT_EQ(json::parse(get->body).at("clusterCount"), 2);
  EXPECT_EQ(get->get_header_value("Access-Control-Allow-Origin"), "*");
  auto post = client.Post("/query", R"({"text":"invoice tax"})", "application/json");
  ASSERT_TRUE(post);
  EXPECT_EQ(post->status, 200);
  auto bad = client.Post("/reassign", "[]", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  server.stop();
  loop.join();
}

TEST(PortfolioRun, ManifestChecks) {
  EXPECT_THROW(PortfolioManifest::from_json({{"apps", {{{"name", "solo"}, {"sources", {"x"}}}}}}, {}), ConfigError);
  const json manifest = {{"apps",
                          {{{"name", "shop"}, {"sources", {fixture("shop").string()}}},
                           {{"name", "plant"}, {"sources", {fixture("sched").string()}}}}}};
  const json report = run_portfolio(PortfolioManifest::from_json(manifest, {}));
  EXPECT_EQ(report.at("apps").size(), 2u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("analyze --factors 0.1,0.2,0.1,0.2,0.2,0.1 -s " + fixture("shop").string()), 1);
  EXPECT_EQ(run_cli("analyze -s /definitely/not/here -o " + scratch("cli-missing").string()), 2);
  const auto out = scratch("cli");
  ASSERT_EQ(run_cli("analyze -s " + fixture("shop").string() + " -o " + out.string()), 0);
  EXPECT_EQ(run_cli("export-graphml -r " + out.string() + " -o " + (out / "x.graphml").string()), 0);
  EXPECT_EQ(slurp(out / "x.graphml"), slurp(fixture("shop_interactions.graphml")));
  EXPECT_EQ(run_cli("query -r " + out.string() + " \"order\""), 0);
  EXPECT_EQ(run_cli("query -r " + out.string() + " \"the\""), 1);
}
