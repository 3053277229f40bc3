#include "archrec/architecture/snapshot.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "archrec/core/error.hpp"

namespace archrec {

using nlohmann::json;

int ArchitectureSnapshot::cluster_count() const { return archrec::cluster_count(labels); }

std::vector<SeedSummary> summarize_search(const SearchResult& r) {
  std::vector<SeedSummary> out;
  for (const auto& run : r.runs)
    out.push_back({seed_name(run.strategy), run.seed_quality, run.quality, run.iterations, run.sn_acceptances,
                   run.close_to_optimal, run.marked, run.early_return});
  return out;
}

ArchitectureSnapshot derive_snapshot(const AnalysisInputs& in, const std::vector<int>& labels,
                                     const ArchitectureOptions& options) {
  const Corpus& corpus = *in.corpus;
  const SimilarityMatrix& g = *in.combined;
  if (labels.size() != corpus.size()) throw std::invalid_argument("labelling does not cover the corpus");
  ArchitectureSnapshot s;
  for (const auto& e : corpus.entities) s.entities.push_back({e.name, e.package});
  s.labels = labels;
  s.quality = quality_of(g, labels);
  s.interfaces = compute_interfaces(labels, corpus.dependencies);
  s.interactions = compute_interactions(labels, corpus.dependencies);
  s.cluster_labels = auto_label(labels, in.features->class_names, in.features->class_raw, g, options.label_k);
  s.borderline = borderline_classes(labels, g, options.borderline_tau);
  s.edges = intra_cluster_edges(labels, g);
  s.cross_layer = cross_layer_usage(labels, corpus.cross_layer);
  s.hierarchy = build_hierarchy(labels, g, options.hierarchy);
  s.label_k = options.label_k;
  return s;
}

ReassignResult reassign_and_refresh(const AnalysisInputs& in, const ArchitectureSnapshot& snapshot,
                                    const std::vector<ReassignMove>& moves, const ArchitectureOptions& options) {
  ReassignResult out;
  std::vector<int> labels = snapshot.labels;
  int next = cluster_count(labels);
  std::vector<int> sizes(next, 0);
  for (int c : labels) ++sizes[c];
  for (const auto& m : moves) {
    if (m.entity < 0 || m.entity >= static_cast<int>(labels.size())) {
      out.rejected.push_back({m, "unknown entity"});
      continue;
    }
    if (m.target != kNewCluster && (m.target < 0 || m.target >= next || sizes[m.target] == 0)) {
      out.rejected.push_back({m, "unknown cluster " + std::to_string(m.target)});
      continue;
    }
    const int from = labels[m.entity];
    int to = m.target;
    if (to == kNewCluster) {
      if (sizes[from] == 1) {
        out.rejected.push_back({m, "entity is already alone in its cluster"});
        continue;
      }
      to = next++;
      sizes.push_back(0);
    }
    if (to == from) {
      out.rejected.push_back({m, "entity is already in cluster " + std::to_string(to)});
      continue;
    }
    --sizes[from];
    ++sizes[to];
    labels[m.entity] = to;
    out.applied.push_back(m);
  }
  std::vector<int> renumber(sizes.size(), -1);
  int dense = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c)
    if (sizes[c] > 0) renumber[c] = dense++;
  for (int& c : labels) c = renumber[c];

  out.snapshot = derive_snapshot(in, labels, options);
  out.snapshot.fingerprint = snapshot.fingerprint;
  out.snapshot.corpus_ref = snapshot.corpus_ref;
  out.snapshot.search = snapshot.search;
  out.snapshot.warnings = snapshot.warnings;
  out.snapshot.meta = snapshot.meta;
  out.snapshot.meta.updated_at = utc_timestamp();
  ++out.snapshot.meta.revision;
  return out;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string method_display(const ArchitectureSnapshot& s, const MethodRef& m) {
  return s.entities.at(m.owner).name + "." + m.method.name;
}

namespace {

json method_json(const ArchitectureSnapshot& s, const MethodRef& m) {
  return {{"owner", m.owner},
          {"ownerName", s.entities.at(m.owner).name},
          {"method", m.method.name},
          {"signature", m.method.signature()}};
}

MethodRef method_from(const json& j) {
  return {j.at("owner").get<int>(),
          MethodSignature::parse(j.at("method").get<std::string>(), j.at("signature").get<std::string>())};
}

QualityReport quality_from(const json& j) {
  return {j.at("mq").get<double>(), j.at("mqc").get<double>(), j.at("diff").get<int>(), j.at("iso").get<int>(),
          j.at("clusterCount").get<int>()};
}

json seed_json(const SeedSummary& r) {
  return {{"strategy", r.strategy},
          {"seedQuality", quality_to_json(r.seed_quality)},
          {"quality", quality_to_json(r.quality)},
          {"iterations", r.iterations},
          {"snAcceptances", r.sn_acceptances},
          {"closeToOptimal", r.close_to_optimal},
          {"marked", r.marked},
          {"earlyReturn", r.early_return}};
}

}  // namespace

json quality_to_json(const QualityReport& q) {
  return {{"mq", q.mq}, {"mqc", q.mqc}, {"diff", q.diff}, {"iso", q.iso}, {"clusterCount", q.cluster_count}};
}

json cluster_to_json(const ArchitectureSnapshot& s, int cluster) {
  json members = json::array();
  for (std::size_t v = 0; v < s.labels.size(); ++v)
    if (s.labels[v] == cluster) members.push_back(v);
  const ClusterLabel& label = s.cluster_labels.at(cluster);
  json concepts = json::array();
  for (const auto& c : label.concepts) concepts.push_back({{"concept", c.word}, {"score", c.score}});
  json iface = json::array();
  for (const auto& m : s.interfaces.at(cluster).methods) iface.push_back(method_json(s, m));
  json layers = json::object();
  for (const auto& [layer, names] : s.cross_layer.at(cluster)) layers[layer_name(layer)] = names;
  return {{"id", cluster},
          {"size", members.size()},
          {"members", members},
          {"label", concepts},
          {"labelSource", label.raw_frequency ? "frequency" : "tfidf"},
          {"centroid", label.centroid},
          {"interface", iface},
          {"crossLayer", layers}};
}

json interactions_to_json(const ArchitectureSnapshot& s) {
  json edges = json::array();
  for (const auto& e : s.interactions.edges) {
    json methods = json::array(), calls = json::array();
    for (const auto& m : e.methods) {
      methods.push_back(method_display(s, m));
      calls.push_back(method_json(s, m));
    }
    edges.push_back({{"from", e.provider}, {"to", e.consumer}, {"methods", methods}, {"calls", calls}});
  }
  return {{"clusterCount", s.interactions.cluster_count}, {"edges", edges}};
}

json borderline_to_json(const ArchitectureSnapshot& s) {
  json entries = json::array();
  for (const auto& e : s.borderline.entries)
    entries.push_back({{"entity", e.entity},
                       {"name", s.entities.at(e.entity).qualified_name()},
                       {"homeCluster", e.home_cluster},
                       {"foreignCluster", e.foreign_cluster},
                       {"foreignEntity", e.foreign_entity},
                       {"foreignSimilarity", e.foreign_similarity},
                       {"homeSimilarity", e.home_similarity}});
  return {{"tau", s.borderline.tau}, {"entries", entries}};
}

json hierarchy_to_json(const Hierarchy& h) {
  json levels = json::array();
  for (std::size_t l = 0; l < h.levels.size(); ++l)
    levels.push_back({{"level", l},
                      {"clusterCount", h.levels[l].quality.cluster_count},
                      {"labels", h.levels[l].labels},
                      {"entityLabels", h.entity_labels(l)},
                      {"quality", quality_to_json(h.levels[l].quality)}});
  return levels;
}

json snapshot_content(const ArchitectureSnapshot& s) {
  json j = snapshot_to_json(s);
  j.erase("meta");
  return j;
}

json snapshot_to_json(const ArchitectureSnapshot& s) {
  json entities = json::array();
  for (std::size_t v = 0; v < s.entities.size(); ++v)
    entities.push_back({{"id", v},
                        {"name", s.entities[v].name},
                        {"package", s.entities[v].package},
                        {"qualifiedName", s.entities[v].qualified_name()},
                        {"cluster", s.labels.at(v)}});
  json clusters = json::array();
  for (int c = 0; c < s.cluster_count(); ++c) clusters.push_back(cluster_to_json(s, c));
  json edges = json::array();
  for (const auto& e : s.edges)
    edges.push_back({{"source", e.u}, {"target", e.v}, {"weight", e.weight}, {"bucket", e.bucket}});
  json search = json::array();
  for (const auto& r : s.search) search.push_back(seed_json(r));
  return {{"schemaVersion", s.schema_version},
          {"fingerprint", s.fingerprint},
          {"corpus", s.corpus_ref},
          {"meta", {{"createdAt", s.meta.created_at}, {"updatedAt", s.meta.updated_at}, {"revision", s.meta.revision}}},
          {"labelSize", s.label_k},
          {"quality", quality_to_json(s.quality)},
          {"entities", entities},
          {"clusters", clusters},
          {"interactions", interactions_to_json(s)},
          {"borderline", borderline_to_json(s)},
          {"edges", edges},
          {"hierarchy", hierarchy_to_json(s.hierarchy)},
          {"search", search},
          {"warnings", s.warnings}};
}

ArchitectureSnapshot snapshot_from_json(const json& j) {
  ArchitectureSnapshot s;
  try {
    s.schema_version = j.at("schemaVersion").get<int>();
    if (s.schema_version != kSnapshotSchemaVersion)
      throw ConfigError("unsupported snapshot schemaVersion " + std::to_string(s.schema_version));
    s.fingerprint = j.at("fingerprint").get<std::string>();
    s.corpus_ref = j.at("corpus").get<std::string>();
    const json& meta = j.at("meta");
    s.meta = {meta.at("createdAt").get<std::string>(), meta.at("updatedAt").get<std::string>(),
              meta.at("revision").get<int>()};
    s.label_k = j.at("labelSize").get<int>();
    s.quality = quality_from(j.at("quality"));
    for (const auto& e : j.at("entities")) {
      s.entities.push_back({e.at("name").get<std::string>(), e.at("package").get<std::string>()});
      s.labels.push_back(e.at("cluster").get<int>());
    }
    for (const auto& c : j.at("clusters")) {
      const int id = c.at("id").get<int>();
      ClusterInterface iface{id, {}};
      for (const auto& m : c.at("interface")) iface.methods.push_back(method_from(m));
      s.interfaces.push_back(std::move(iface));
      ClusterLabel label;
      label.cluster = id;
      for (const auto& k : c.at("label"))
        label.concepts.push_back({k.at("concept").get<std::string>(), k.at("score").get<double>()});
      label.centroid = c.at("centroid").get<int>();
      label.raw_frequency = c.at("labelSource").get<std::string>() == "frequency";
      s.cluster_labels.push_back(std::move(label));
      LayerUsage usage;
      for (const auto& [layer, names] : c.at("crossLayer").items())
        usage[parse_layer(layer)] = names.get<std::set<std::string>>();
      s.cross_layer.push_back(std::move(usage));
    }
    const json& ig = j.at("interactions");
    s.interactions.cluster_count = ig.at("clusterCount").get<int>();
    for (const auto& e : ig.at("edges")) {
      InteractionEdge edge{e.at("from").get<int>(), e.at("to").get<int>(), {}};
      for (const auto& m : e.at("calls")) edge.methods.push_back(method_from(m));
      s.interactions.edges.push_back(std::move(edge));
    }
    const json& b = j.at("borderline");
    s.borderline.tau = b.at("tau").get<double>();
    for (const auto& e : b.at("entries"))
      s.borderline.entries.push_back({e.at("entity").get<int>(), e.at("homeCluster").get<int>(),
                                      e.at("foreignCluster").get<int>(), e.at("foreignEntity").get<int>(),
                                      e.at("foreignSimilarity").get<double>(), e.at("homeSimilarity").get<double>()});
    for (const auto& e : j.at("edges"))
      s.edges.push_back({e.at("source").get<int>(), e.at("target").get<int>(), e.at("weight").get<double>(),
                         e.at("bucket").get<int>()});
    for (const auto& l : j.at("hierarchy"))
      s.hierarchy.levels.push_back({l.at("labels").get<std::vector<int>>(), quality_from(l.at("quality"))});
    for (const auto& r : j.at("search"))
      s.search.push_back({r.at("strategy").get<std::string>(), quality_from(r.at("seedQuality")),
                          quality_from(r.at("quality")), r.at("iterations").get<int>(),
                          r.at("snAcceptances").get<int>(), r.at("closeToOptimal").get<bool>(),
                          r.at("marked").get<bool>(), r.at("earlyReturn").get<bool>()});
    s.warnings = j.at("warnings").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed snapshot: ") + e.what());
  }
  return s;
}

void save_snapshot(const ArchitectureSnapshot& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << snapshot_to_json(s).dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ArchitectureSnapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read snapshot " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return snapshot_from_json(j);
}

}  // namespace archrec
