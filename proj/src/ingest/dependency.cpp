#include "archrec/ingest/dependency.hpp"

#include <fstream>
#include <map>
#include <variant>

#include "archrec/core/error.hpp"

namespace archrec {

std::vector<CallFact> read_call_edge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path.string() + ": cannot open call-edge file");
  std::vector<CallFact> facts;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 3 || fields.size() > 4 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty())
      throw IngestError(path.string() + ":" + std::to_string(number) +
                        ": expected caller<TAB>callee<TAB>method<TAB>signature");
    CallFact f;
    f.caller = fields[0];
    f.callee = fields[1];
    f.method = fields[2];
    if (fields.size() == 4) f.signature = fields[3];
    f.origin = path.string() + ":" + std::to_string(number);
    facts.push_back(std::move(f));
  }
  return facts;
}

std::vector<CallFact> facts_from_source(const std::vector<SourceCall>& calls) {
  std::vector<CallFact> facts;
  facts.reserve(calls.size());
  for (const auto& c : calls) {
    CallFact f;
    f.caller = c.caller;
    f.callee = c.receiver_type;
    f.method = c.method;
    f.arity = c.arity;
    f.caller_package = c.caller_package;
    f.from_source = true;
    f.origin = c.source_path + ":" + std::to_string(c.line);
    facts.push_back(std::move(f));
  }
  return facts;
}

namespace {

struct BusinessRef {
  int id;
};
struct ExcludedRef {
  Layer layer;
  const CodeEntity* entity;
};
using Ref = std::variant<BusinessRef, ExcludedRef>;

struct Named {
  std::string package;
  Ref ref;
};

class NameIndex {
 public:
  explicit NameIndex(const ScopeResult& scoped) {
    for (const auto& e : scoped.business) add(e, BusinessRef{e.id});
    for (const auto& [layer, list] : scoped.excluded)
      for (const auto& e : list) add(e, ExcludedRef{layer, &e});
  }

  const Ref* find(const std::string& name, const std::string& preferred_package) const {
    if (auto q = qualified_.find(name); q != qualified_.end()) return &q->second;
    auto s = simple_.find(name);
    if (s == simple_.end()) return nullptr;
    for (const auto& n : s->second)
      if (n.package == preferred_package) return &n.ref;
    return &s->second.front().ref;
  }

 private:
  void add(const CodeEntity& e, Ref ref) {
    qualified_.emplace(e.qualified_name(), ref);
    simple_[e.name].push_back({e.package, ref});
  }

  std::map<std::string, Ref> qualified_;
  std::map<std::string, std::vector<Named>> simple_;
};

const MethodSignature* resolve_method(const CodeEntity& callee, const CallFact& f) {
  if (!f.signature.empty()) {
    const auto wanted = MethodSignature::parse(f.method, f.signature);
    for (const auto& m : callee.public_methods)
      if (m.name == wanted.name && m.param_types == wanted.param_types) return &m;
    return callee.find_public_method(f.method, static_cast<int>(wanted.param_types.size()));
  }
  return callee.find_public_method(f.method, f.arity);
}

}  // namespace

DependencyBuild build_dependency_graph(const ScopeResult& scoped, const std::vector<CallFact>& facts) {
  DependencyBuild out;
  out.graph.node_count = static_cast<int>(scoped.business.size());
  const NameIndex index(scoped);

  for (const auto& f : facts) {
    const Ref* caller = index.find(f.caller, f.caller_package);
    if (!caller) {
      out.warnings.push_back(f.origin + ": unknown caller class '" + f.caller + "', edge skipped");
      continue;
    }
    const auto* from = std::get_if<BusinessRef>(caller);
    if (!from) continue;  // calls made by scoped-out classes are not part of the business graph

    const Ref* callee = index.find(f.callee, f.caller_package);
    if (!callee) {
      if (!f.from_source)
        out.warnings.push_back(f.origin + ": unknown callee class '" + f.callee + "', edge skipped");
      out.unresolved.push_back({from->id, f.callee, f.method, f.arity});
      continue;
    }
    if (const auto* side = std::get_if<ExcludedRef>(callee)) {
      out.cross_layer.push_back({from->id, side->layer, side->entity->qualified_name(), f.method});
      continue;
    }
    const int to = std::get<BusinessRef>(*callee).id;
    if (to == from->id) continue;
    const MethodSignature* m = resolve_method(scoped.business[to], f);
    if (!m) {
      if (!f.from_source)
        out.warnings.push_back(f.origin + ": '" + f.method + "' is not a public method of '" +
                             scoped.business[to].qualified_name() + "', edge skipped");
      continue;
    }
    out.graph.edges.push_back({from->id, to, *m});
  }
  return out;
}

}  // namespace archrec
