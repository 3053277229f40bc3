#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "archrec/core/rng.hpp"
#include "archrec/core/symmetric_matrix.hpp"
#include "archrec/ingest/corpus.hpp"
#include "archrec/ingest/text.hpp"
#include "archrec/service/pipeline.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(ARCHREC_FIXTURES) / name; }

// Complete graph with each pair present with probability `p` and weight U(lo, hi).
inline archrec::WeightedGraph random_graph(archrec::Rng& rng, int n, double p = 1.0, double lo = 0.0,
                                           double hi = 1.0) {
  archrec::WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) g.set(u, v, lo + (hi - lo) * rng.uniform01());
  return g;
}

inline std::vector<int> random_labels(archrec::Rng& rng, int n, int k) {
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng.uniform_int(0, k - 1));
  return labels;
}

// Planted blocks: intra U[0.7, 1], inter U[0, 0.1].
inline archrec::WeightedGraph planted_graph(archrec::Rng& rng, const std::vector<int>& blocks) {
  const int n = static_cast<int>(blocks.size());
  archrec::WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      g.set(u, v, blocks[u] == blocks[v] ? 0.7 + 0.3 * rng.uniform01() : 0.1 * rng.uniform01());
  return g;
}

// A corpus of `n` synthetic classes drawn from small vocabularies, with random calls.
inline archrec::Corpus random_corpus(archrec::Rng& rng, int n) {
  static const std::vector<std::string> words = {"order", "invoice", "payment", "customer", "schedule", "report",
                                                 "account", "ledger",  "queue",   "process",  "token",    "cache"};
  static const std::vector<std::string> caps = {"Order", "Invoice", "Payment", "Customer", "Schedule", "Report",
                                                "Account", "Ledger", "Queue", "Process", "Token", "Cache"};
  static const std::vector<std::string> packages = {"com.acme.sales", "com.acme.billing", "org.demo.core"};
  auto pick = [&](const std::vector<std::string>& v) { return v[rng.uniform_int(0, v.size() - 1)]; };
  std::vector<archrec::CodeEntity> entities;
  for (int i = 0; i < n; ++i) {
    archrec::CodeEntity e;
    e.name = pick(caps) + pick(caps) + std::to_string(i);
    e.package = pick(packages);
    e.package_path = archrec::extract_package_path(e.package);
    const int methods = static_cast<int>(rng.uniform_int(0, 3));
    for (int m = 0; m < methods; ++m) e.public_methods.push_back({"get" + pick(caps), {"int"}, "void"});
    const int comments = static_cast<int>(rng.uniform_int(0, 3));
    for (int c = 0; c < comments; ++c) e.comments.push_back("the " + pick(words) + " of a " + pick(words));
    if (rng.uniform01() < 0.3 && i > 0) e.inheritance_raw.insert(entities[rng.uniform_int(0, i - 1)].name);
    entities.push_back(std::move(e));
  }
  std::vector<archrec::CallFact> facts;
  for (int k = 0; k < n; ++k) {
    const auto a = rng.uniform_int(0, n - 1), b = rng.uniform_int(0, n - 1);
    if (a == b || entities[b].public_methods.empty()) continue;
    const auto& m = entities[b].public_methods[0];
    facts.push_back({entities[a].package + "." + entities[a].name, entities[b].package + "." + entities[b].name,
                     m.name, m.signature(), 1, entities[a].package, false, "random"});
  }
  return archrec::assemble_corpus(std::move(entities), facts, {}, archrec::TextPipeline::java_default(),
                                  archrec::Exec::Serial);
}

inline archrec::RunConfig fixture_config(const std::string& corpus) {
  archrec::RunConfig cfg;
  cfg.sources = {fixture(corpus).string()};
  cfg.output = (std::filesystem::temp_directory_path() / ("archrec-" + corpus)).string();
  return cfg;
}

// The analysed 6-class shop fixture; billing classes are ids 0-2, orders 3-5.
inline const archrec::Analysis& shop_analysis() {
  static const archrec::Analysis a = archrec::analyze(fixture_config("shop"));
  return a;
}

}  // namespace testing_support
