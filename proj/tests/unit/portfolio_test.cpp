#include <gtest/gtest.h>

#include "archrec/core/error.hpp"
#include "archrec/ingest/text.hpp"
#include "archrec/portfolio/portfolio.hpp"
#include "oracles/partition_oracle.hpp"

using namespace archrec;

namespace {

CodeEntity cls(const std::string& package, const std::string& name, const std::string& comment,
               std::vector<std::string> methods = {}) {
  CodeEntity e;
  e.package = package;
  e.name = name;
  e.package_path = extract_package_path(package);
  e.comments = {comment};
  for (auto& m : methods) e.public_methods.push_back({m, {}, "void"});
  return e;
}

PortfolioApp app(const std::string& name, std::vector<CodeEntity> entities, std::vector<CallFact> facts = {}) {
  return {name, assemble_corpus(std::move(entities), facts, {}, TextPipeline::java_default(), Exec::Serial)};
}

PortfolioApp billing(const std::string& name) {
  return app(name, {cls("b", "InvoiceLedger", "invoice ledger payment"), cls("b", "TaxRate", "tax rate invoice")});
}

PortfolioApp telemetry(const std::string& name) {
  return app(name, {cls("t", "SensorProbe", "sensor probe signal"), cls("t", "SignalFilter", "signal filter noise")});
}

}  // namespace

TEST(Portfolio, NeedsTwoApps) {
  EXPECT_THROW(build_app_profiles({billing("one")}), ConfigError);
}

TEST(Portfolio, IdenticalAppsAreFullySimilar) {
  const AppProfiles p = build_app_profiles({billing("a"), billing("b")});
  EXPECT_EQ(p.text.row_sum(0), p.text.row_sum(1));
  const AppSimilarities s = app_similarity(p, {});
  EXPECT_NEAR(s.textual(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(s.class_names(0, 1), 1.0, 1e-12);
}

TEST(Portfolio, DisjointAppsAreUnrelated) {
  const AppProfiles p = build_app_profiles({billing("a"), telemetry("b")});
  const AppSimilarities s = app_similarity(p, {});
  EXPECT_EQ(s.combined(0, 1), 0.0);
  EXPECT_NEAR(s.w_text + s.w_class + s.w_structural, 1.0, 1e-12);
}

TEST(Portfolio, UbiquitousTokensWeighNothing) {
  auto a = app("a", {cls("x", "Alpha", "zebra alpha"), cls("x", "Beta", "zebra beta")});
  auto b = app("b", {cls("y", "Gamma", "zebra gamma")});
  const AppProfiles p = build_app_profiles({a, b});
  const int raw = p.text_raw.column("zebra");
  ASSERT_GE(raw, 0);
  EXPECT_EQ(p.text_raw.at(0, raw), 2.0);
  EXPECT_EQ(p.text.column("zebra"), -1);
  EXPECT_GT(p.text.at(1, p.text.column("gamma")), 0.0);
  EXPECT_EQ(p.text.at(0, p.text.column("gamma")), 0.0);
}

TEST(Portfolio, CrossAppCallsBecomeStructuralEdges) {
  CodeEntity caller = cls("c", "Checkout", "checkout basket");
  const PortfolioApp provider = app("pay", {cls("p", "Gateway", "gateway card", {"charge"})});
  Corpus c = assemble_corpus({caller}, {}, {}, TextPipeline::java_default(), Exec::Serial);
  c.unresolved.push_back({0, "p.Gateway", "charge", 0});
  const AppProfiles p = build_app_profiles({{"shop", c}, provider});
  ASSERT_EQ(p.calls.edges.size(), 1u);
  EXPECT_EQ(p.calls.edges[0].caller, 0);
  EXPECT_EQ(p.calls.edges[0].callee, 1);
  EXPECT_GT(app_similarity(p, {}).structural(0, 1), 0.0);
}

TEST(Portfolio, TwoFamiliesTwoClusters) {
  const AppProfiles p =
      build_app_profiles({billing("b1"), telemetry("t1"), billing("b2"), telemetry("t2"), billing("b3"), telemetry("t3")});
  const AppSimilarities s = app_similarity(p, {});
  SearchConfig cfg;
  cfg.seed = 3;
  const SearchResult r = cluster_apps(s.combined, cfg);
  EXPECT_EQ(r.labels, (std::vector<int>{0, 1, 0, 1, 0, 1}));
  EXPECT_NEAR(r.quality.mqc, oracle::brute_force_mqc(s.combined).quality.mqc, 1e-9);
  const auto report = portfolio_report(p, s, r);
  EXPECT_EQ(report.at("apps").size(), 6u);
}
