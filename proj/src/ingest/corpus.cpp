#include "archrec/ingest/corpus.hpp"

#include <fstream>

#include "archrec/core/error.hpp"

namespace archrec {

using nlohmann::json;

int Corpus::find(const std::string& name) const {
  for (const auto& e : entities)
    if (e.qualified_name() == name) return e.id;
  for (const auto& e : entities)
    if (e.name == name) return e.id;
  return -1;
}

Corpus assemble_corpus(std::vector<CodeEntity> entities, const std::vector<CallFact>& facts,
                       const ScopingRules& rules, const TextPipeline& pipeline, Exec exec) {
  for (std::size_t i = 0; i < entities.size(); ++i) {
    entities[i].id = static_cast<int>(i);
    entities[i].inheritance_raw.erase(entities[i].name);
  }
  if (entities.empty()) throw IngestError("nothing to cluster: the corpus has no classes");
  ScopeResult scoped = scope_corpus(entities, rules);

  Corpus corpus;
  const std::size_t d = scoped.business.size();
  corpus.text.resize(d);
  const auto& business = scoped.business;
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < d; ++i) corpus.text[i] = extract_textual_features(business[i], pipeline);
  } else {
    for (std::size_t i = 0; i < d; ++i) corpus.text[i] = extract_textual_features(business[i], pipeline);
  }

  DependencyBuild deps = build_dependency_graph(scoped, facts);
  corpus.entities = std::move(scoped.business);
  corpus.excluded = std::move(scoped.excluded);
  corpus.original_ids = std::move(scoped.original_ids);
  corpus.dependencies = std::move(deps.graph);
  corpus.cross_layer = std::move(deps.cross_layer);
  corpus.unresolved = std::move(deps.unresolved);
  corpus.warnings = std::move(deps.warnings);
  corpus.stemmer = pipeline.stemmer->name();
  return corpus;
}

Corpus ingest_corpus(const IngestOptions& options, const TextPipeline& pipeline) {
  ScannedSource scanned = scan_java_tree(options.sources);
  const std::vector<CallFact> facts = options.call_edges ? read_call_edge_file(*options.call_edges)
                                                         : facts_from_source(scanned.calls);
  return assemble_corpus(std::move(scanned.entities), facts, options.rules, pipeline);
}

namespace {

json method_to_json(const MethodSignature& m) {
  return {{"name", m.name}, {"params", m.param_types}, {"returns", m.return_type}};
}

MethodSignature method_from_json(const json& j) {
  return {j.at("name").get<std::string>(), j.at("params").get<std::vector<std::string>>(),
          j.at("returns").get<std::string>()};
}

json entity_to_json(const CodeEntity& e) {
  json methods = json::array();
  for (const auto& m : e.public_methods) methods.push_back(method_to_json(m));
  return {{"id", e.id},
          {"name", e.name},
          {"package", e.package},
          {"packagePath", e.package_path},
          {"publicMethods", methods},
          {"publicVariables", e.public_variables},
          {"comments", e.comments},
          {"inheritance", e.inheritance_raw},
          {"source", e.source_path},
          {"line", e.source_line}};
}

CodeEntity entity_from_json(const json& j) {
  CodeEntity e;
  e.id = j.at("id").get<int>();
  e.name = j.at("name").get<std::string>();
  e.package = j.at("package").get<std::string>();
  e.package_path = j.at("packagePath").get<std::vector<std::string>>();
  for (const auto& m : j.at("publicMethods")) e.public_methods.push_back(method_from_json(m));
  e.public_variables = j.at("publicVariables").get<std::vector<std::string>>();
  e.comments = j.at("comments").get<std::vector<std::string>>();
  e.inheritance_raw = j.at("inheritance").get<std::set<std::string>>();
  e.source_path = j.at("source").get<std::string>();
  e.source_line = j.at("line").get<int>();
  return e;
}

}  // namespace

json corpus_to_json(const Corpus& c) {
  json entities = json::array();
  for (std::size_t i = 0; i < c.entities.size(); ++i) {
    json e = entity_to_json(c.entities[i]);
    e["originalId"] = c.original_ids.at(i);
    e["text"] = c.text.at(i).counts();
    entities.push_back(std::move(e));
  }
  json excluded = json::object();
  for (const auto& [layer, list] : c.excluded) {
    json arr = json::array();
    for (const auto& e : list) arr.push_back(entity_to_json(e));
    excluded[layer_name(layer)] = std::move(arr);
  }
  json edges = json::array();
  for (const auto& e : c.dependencies.edges)
    edges.push_back({{"caller", e.caller}, {"callee", e.callee}, {"method", method_to_json(e.method)}});
  json side = json::array();
  for (const auto& s : c.cross_layer)
    side.push_back({{"caller", s.caller}, {"layer", layer_name(s.layer)}, {"callee", s.callee}, {"method", s.method}});
  json unresolved = json::array();
  for (const auto& u : c.unresolved)
    unresolved.push_back({{"caller", u.caller}, {"type", u.type_name}, {"method", u.method}, {"arity", u.arity}});
  return {{"schemaVersion", 1},
          {"stemmer", c.stemmer},
          {"entities", entities},
          {"excluded", excluded},
          {"dependencies", edges},
          {"crossLayer", side},
          {"unresolved", unresolved},
          {"warnings", c.warnings}};
}

Corpus corpus_from_json(const json& j) {
  try {
    if (j.at("schemaVersion").get<int>() != 1) throw IngestError("unsupported corpus schemaVersion");
    Corpus c;
    c.stemmer = j.at("stemmer").get<std::string>();
    for (const auto& e : j.at("entities")) {
      c.entities.push_back(entity_from_json(e));
      c.original_ids.push_back(e.at("originalId").get<int>());
      TokenBag bag;
      for (const auto& [token, count] : e.at("text").items()) bag.add(token, count.get<int>());
      c.text.push_back(std::move(bag));
    }
    for (const auto& [layer, list] : j.at("excluded").items())
      for (const auto& e : list) c.excluded[parse_layer(layer)].push_back(entity_from_json(e));
    c.dependencies.node_count = static_cast<int>(c.entities.size());
    for (const auto& e : j.at("dependencies"))
      c.dependencies.edges.push_back(
          {e.at("caller").get<int>(), e.at("callee").get<int>(), method_from_json(e.at("method"))});
    for (const auto& s : j.at("crossLayer"))
      c.cross_layer.push_back({s.at("caller").get<int>(), parse_layer(s.at("layer").get<std::string>()),
                               s.at("callee").get<std::string>(), s.at("method").get<std::string>()});
    for (const auto& u : j.at("unresolved"))
      c.unresolved.push_back({u.at("caller").get<int>(), u.at("type").get<std::string>(),
                              u.at("method").get<std::string>(), u.at("arity").get<int>()});
    c.warnings = j.at("warnings").get<std::vector<std::string>>();
    return c;
  } catch (const json::exception& e) {
    throw IngestError(std::string("malformed corpus bundle: ") + e.what());
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot write corpus bundle");
  out << corpus_to_json(corpus).dump(1) << '\n';
}

Corpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path.string() + ": cannot open corpus bundle");
  try {
    return corpus_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw IngestError(path.string() + ": " + e.what());
  }
}

}  // namespace archrec
