#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "archrec/ingest/entity.hpp"
#include "archrec/ingest/java_scanner.hpp"
#include "archrec/ingest/scoping.hpp"

namespace archrec {

// One resolved (or to-be-resolved) call site. Class names may be qualified or
// simple; `signature` is "(T1,T2)R" or empty, `arity` is -1 when unknown.
struct CallFact {
  std::string caller;
  std::string callee;
  std::string method;
  std::string signature;
  int arity = -1;
  std::string caller_package;  // used to prefer same-package matches for simple names
  bool from_source = false;    // receivers outside the corpus are expected, not warned about
  std::string origin;          // "file:line" for diagnostics
};

struct DependencyEdge {
  int caller = 0;
  int callee = 0;
  MethodSignature method;

  bool operator==(const DependencyEdge&) const = default;
};

// Directed call multigraph over business entities. Parallel edges allowed,
// self-calls never stored.
struct DependencyGraph {
  int node_count = 0;
  std::vector<DependencyEdge> edges;

  bool operator==(const DependencyGraph&) const = default;
};

// A business class calling into a scoped-out class.
struct SideEdge {
  int caller = 0;
  Layer layer = Layer::Utilities;
  std::string callee;  // qualified name
  std::string method;

  bool operator==(const SideEdge&) const = default;
};

// A call whose receiver type is not a class of this corpus.
struct UnresolvedCall {
  int caller = 0;
  std::string type_name;
  std::string method;
  int arity = -1;

  bool operator==(const UnresolvedCall&) const = default;
};

struct DependencyBuild {
  DependencyGraph graph;
  std::vector<SideEdge> cross_layer;
  std::vector<UnresolvedCall> unresolved;
  std::vector<std::string> warnings;
};

// Tab-separated `caller callee method signature`; blank lines and '#' comments
// are skipped. Throws IngestError with file:line on malformed lines.
std::vector<CallFact> read_call_edge_file(const std::filesystem::path& path);

std::vector<CallFact> facts_from_source(const std::vector<SourceCall>& calls);

DependencyBuild build_dependency_graph(const ScopeResult& scoped, const std::vector<CallFact>& facts);

}  // namespace archrec
