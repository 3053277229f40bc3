#include "archrec/service/api.hpp"

#include <charconv>
#include <optional>

#include <httplib.h>

#include "archrec/core/error.hpp"

namespace archrec {

using nlohmann::json;

namespace {

struct FieldErrors {
  json list = json::array();

  void add(const std::string& field, const std::string& message) {
    list.push_back({{"field", field}, {"message", message}});
  }
  bool empty() const { return list.empty(); }
  ApiResponse response() const { return {400, {{"error", "malformed request"}, {"fields", list}}}; }
};

ApiResponse not_found(const std::string& what) { return {404, {{"error", what}}}; }

std::optional<int> parse_index(const std::string& s) {
  int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

int resolve_entity(const ArchitectureSnapshot& s, const std::string& name) {
  int simple = -1, simple_hits = 0;
  for (std::size_t i = 0; i < s.entities.size(); ++i) {
    if (s.entities[i].qualified_name() == name) return static_cast<int>(i);
    if (s.entities[i].name == name) {
      simple = static_cast<int>(i);
      ++simple_hits;
    }
  }
  return simple_hits == 1 ? simple : -1;
}

json label_words(const ArchitectureSnapshot& s, int cluster) {
  json words = json::array();
  for (const auto& c : s.cluster_labels.at(cluster).concepts) words.push_back(c.word);
  return words;
}

}  // namespace

ArchitectureService::ArchitectureService(Analysis analysis)
    : analysis_(std::move(analysis)),
      current_(std::make_shared<const ArchitectureSnapshot>(analysis_.snapshot)) {}

std::shared_ptr<const ArchitectureSnapshot> ArchitectureService::snapshot() const {
  std::lock_guard lock(read_mutex_);
  return current_;
}

ApiResponse ArchitectureService::handle(const std::string& method, const std::string& path, const std::string& body) {
  const auto snap = snapshot();
  if (method == "GET") {
    if (path == "/snapshot") return {200, snapshot_to_json(*snap)};
    if (path == "/clusters") {
      json clusters = json::array();
      for (int c = 0; c < snap->cluster_count(); ++c) clusters.push_back(cluster_to_json(*snap, c));
      return {200, {{"clusterCount", snap->cluster_count()}, {"quality", quality_to_json(snap->quality)},
                    {"clusters", clusters}}};
    }
    if (path.rfind("/clusters/", 0) == 0) return get_cluster(path.substr(10));
    if (path == "/interactions") return {200, interactions_to_json(*snap)};
    if (path == "/borderline") return {200, borderline_to_json(*snap)};
    if (path == "/hierarchy") return {200, {{"levels", hierarchy_to_json(snap->hierarchy)}}};
  } else if (method == "POST") {
    if (path == "/reassign" || path == "/query" || path == "/map-entities") {
      json j;
      try {
        j = json::parse(body);
      } catch (const json::exception& e) {
        FieldErrors errors;
        errors.add("body", std::string("invalid JSON: ") + e.what());
        return errors.response();
      }
      if (!j.is_object()) {
        FieldErrors errors;
        errors.add("body", "expected a JSON object");
        return errors.response();
      }
      if (path == "/reassign") return reassign(j);
      if (path == "/query") return query(j);
      return map_entities(j);
    }
  }
  static const char* known[] = {"/snapshot", "/clusters", "/interactions", "/borderline",
                                "/hierarchy", "/reassign", "/query",    "/map-entities"};
  for (const char* k : known)
    if (path == k) return {405, {{"error", "method " + method + " not allowed on " + path}}};
  return not_found("no route " + path);
}

ApiResponse ArchitectureService::get_cluster(const std::string& id) const {
  const auto snap = snapshot();
  const auto c = parse_index(id);
  if (!c || *c >= snap->cluster_count()) return not_found("unknown cluster '" + id + "'");
  return {200, cluster_to_json(*snap, *c)};
}

ApiResponse ArchitectureService::reassign(const json& body) {
  FieldErrors errors;
  if (!body.contains("moves") || !body["moves"].is_array()) {
    errors.add("moves", "required array of {entity, cluster}");
    return errors.response();
  }
  std::lock_guard writer(write_mutex_);
  const auto snap = snapshot();
  std::vector<ReassignMove> moves;
  std::vector<json> refs;
  const json& list = body["moves"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = "moves[" + std::to_string(i) + "]";
    const json& m = list[i];
    if (!m.is_object()) {
      errors.add(at, "expected an object");
      continue;
    }
    ReassignMove move;
    if (!m.contains("entity")) {
      errors.add(at + ".entity", "required");
    } else if (m["entity"].is_number_integer()) {
      move.entity = m["entity"].get<int>();
    } else if (m["entity"].is_string()) {
      move.entity = resolve_entity(*snap, m["entity"].get<std::string>());
    } else {
      errors.add(at + ".entity", "expected an entity id or class name");
    }
    if (!m.contains("cluster")) {
      errors.add(at + ".cluster", "required");
    } else if (m["cluster"].is_number_integer()) {
      move.target = m["cluster"].get<int>();
      if (move.target < 0) move.target = -2;
    } else if (m["cluster"] == "new") {
      move.target = kNewCluster;
    } else {
      errors.add(at + ".cluster", "expected a cluster id or \"new\"");
    }
    moves.push_back(move);
    refs.push_back(m);
  }
  if (!errors.empty()) return errors.response();

  ReassignResult r = reassign_and_refresh(analysis_.inputs(), *snap, moves, analysis_.architecture_options());
  json applied = json::array(), rejected = json::array();
  for (const auto& m : r.applied)
    applied.push_back({{"entity", m.entity},
                       {"name", r.snapshot.entities[m.entity].qualified_name()},
                       {"cluster", r.snapshot.labels[m.entity]}});
  for (const auto& rej : r.rejected) {
    const auto pos = std::find(moves.begin(), moves.end(), rej.move) - moves.begin();
    rejected.push_back({{"move", refs.at(pos)}, {"reason", rej.reason}});
  }
  auto next = std::make_shared<const ArchitectureSnapshot>(std::move(r.snapshot));
  {
    std::lock_guard lock(read_mutex_);
    current_ = next;
  }
  json clusters = json::array();
  for (int c = 0; c < next->cluster_count(); ++c) clusters.push_back(cluster_to_json(*next, c));
  return {200,
          {{"revision", next->meta.revision},
           {"updatedAt", next->meta.updated_at},
           {"applied", applied},
           {"rejected", rejected},
           {"quality", quality_to_json(next->quality)},
           {"clusters", clusters},
           {"interactions", interactions_to_json(*next)},
           {"borderline", borderline_to_json(*next)},
           {"hierarchy", hierarchy_to_json(next->hierarchy)}}};
}

ApiResponse ArchitectureService::query(const json& body) const {
  FieldErrors errors;
  QueryOptions options = analysis_.query_options();
  int limit = 5;
  std::string text;
  if (!body.contains("text") || !body["text"].is_string())
    errors.add("text", "required string");
  else
    text = body["text"].get<std::string>();
  if (body.contains("limit")) {
    if (!body["limit"].is_number_integer() || body["limit"].get<int>() < 1)
      errors.add("limit", "expected a positive integer");
    else
      limit = body["limit"].get<int>();
  }
  for (const char* key : {"alpha", "beta"}) {
    if (!body.contains(key)) continue;
    if (!body[key].is_number())
      errors.add(key, "expected a number");
    else
      (std::string(key) == "alpha" ? options.alpha : options.beta) = body[key].get<double>();
  }
  if (errors.empty()) {
    try {
      options.validate();
    } catch (const ConfigError& e) {
      errors.add("alpha/beta", e.what());
    }
  }
  if (!errors.empty()) return errors.response();

  std::vector<RankedClass> ranked;
  try {
    ranked = query_classes(text, analysis_.index, analysis_.combined, options);
  } catch (const UnanswerableQuery& e) {
    return {422, {{"error", e.what()}, {"query", text}}};
  }
  const auto snap = snapshot();
  json all = json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    all.push_back({{"rank", i + 1},
                   {"entity", r.entity},
                   {"name", snap->entities[r.entity].qualified_name()},
                   {"cluster", snap->labels[r.entity]},
                   {"finalScore", r.final_score},
                   {"vsmRank", r.vsm_rank},
                   {"centroidRank", r.centroid_rank},
                   {"vsmScore", r.vsm_score},
                   {"centroidScore", r.centroid_score}});
  }
  json top = json::array();
  for (std::size_t i = 0; i < all.size() && i < static_cast<std::size_t>(limit); ++i) top.push_back(all[i]);
  return {200, {{"query", text}, {"alpha", options.alpha}, {"beta", options.beta}, {"top", top}, {"ranked", all}}};
}

ApiResponse ArchitectureService::map_entities(const json& body) const {
  FieldErrors errors;
  std::vector<std::string> descriptions;
  double theta = analysis_.config.mapping_threshold;
  if (!body.contains("descriptions") || !body["descriptions"].is_array()) {
    errors.add("descriptions", "required array of strings");
  } else {
    for (std::size_t i = 0; i < body["descriptions"].size(); ++i) {
      const json& d = body["descriptions"][i];
      if (d.is_string())
        descriptions.push_back(d.get<std::string>());
      else
        errors.add("descriptions[" + std::to_string(i) + "]", "expected a string");
    }
  }
  if (body.contains("threshold")) {
    if (!body["threshold"].is_number() || body["threshold"].get<double>() < 0.0)
      errors.add("threshold", "expected a non-negative number");
    else
      theta = body["threshold"].get<double>();
  }
  if (!errors.empty()) return errors.response();

  const auto snap = snapshot();
  const ClusterVectors vectors =
      cluster_vectors(snap->labels, analysis_.index.text, analysis_.index.class_names);
  const auto mappings = archrec::map_entities(descriptions, vectors, analysis_.index, theta);
  json out = json::array();
  for (const auto& m : mappings) {
    json clusters = json::array();
    for (const auto& c : m.clusters)
      clusters.push_back({{"cluster", c.cluster}, {"similarity", c.similarity}, {"label", label_words(*snap, c.cluster)}});
    json entry = {{"description", m.description}, {"clusters", clusters}};
    if (!m.diagnostic.empty()) entry["diagnostic"] = m.diagnostic;
    out.push_back(std::move(entry));
  }
  return {200, {{"threshold", theta}, {"mappings", out}}};
}

struct HttpServer::Impl {
  httplib::Server server;
  ArchitectureService* service = nullptr;
};

HttpServer::HttpServer(ArchitectureService& service) : impl_(std::make_unique<Impl>()) {
  impl_->service = &service;
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    ApiResponse r;
    try {
      r = impl_->service->handle(req.method, req.path, req.body);
    } catch (const std::exception& e) {
      r = {500, {{"error", e.what()}}};
    }
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  impl_->server.Get(".*", dispatch);
  impl_->server.Post(".*", dispatch);
  impl_->server.Options(".*", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace archrec
