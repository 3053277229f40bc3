#include "archrec/service/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "archrec/core/error.hpp"
#include "archrec/core/exec.hpp"

namespace archrec {

using nlohmann::json;

ArchitectureOptions Analysis::architecture_options() const {
  ArchitectureOptions o;
  o.borderline_tau = config.borderline_tau;
  o.label_k = config.label_k;
  o.hierarchy = search_config();
  o.hierarchy.trace = false;
  o.hierarchy.seed = Rng::derive(config.rng_seed, 0x41e7);
  return o;
}

SearchConfig Analysis::search_config() const {
  SearchConfig s;
  s.strategies = config.seed_strategies();
  s.temperature = config.temperature;
  s.cooling = config.cooling;
  s.seed = config.rng_seed;
  s.epsilon_stop = config.epsilon_stop;
  s.max_iterations = config.max_iterations;
  s.audit_rate = config.audit_rate;
  s.outlier_elimination = config.outlier_elimination;
  s.trace = true;
  return s;
}

QueryOptions Analysis::query_options() const { return {config.alpha, config.beta, 0}; }

TextPipeline text_pipeline(const std::string& stemmer) {
  TextPipeline p = TextPipeline::java_default();
  p.stemmer = make_stemmer(stemmer);
  return p;
}

namespace {

void finish_snapshot(Analysis& a) {
  a.snapshot = derive_snapshot(a.inputs(), a.search.labels, a.architecture_options());
  a.snapshot.fingerprint = a.config.fingerprint();
  a.snapshot.corpus_ref = "corpus.json";
  a.snapshot.search = summarize_search(a.search);
  a.snapshot.warnings = a.corpus.warnings;
  a.snapshot.warnings.insert(a.snapshot.warnings.end(), a.search.warnings.begin(), a.search.warnings.end());
  const std::string now = utc_timestamp();
  a.snapshot.meta = {now, now, 0};
}

}  // namespace

Analysis analyze(const RunConfig& cfg, FeatureSimilarities* six_out) {
  cfg.validate();
  set_kernel_threads(cfg.threads);
  Analysis a;
  a.config = cfg;
  const TextPipeline pipeline = text_pipeline(cfg.stemmer);

  IngestOptions options;
  for (const auto& s : cfg.sources) options.sources.emplace_back(s);
  if (!cfg.call_edges.empty()) options.call_edges = cfg.call_edges;
  if (!cfg.scoping.empty()) options.rules = ScopingRules::load(cfg.scoping);
  options.rules.validate();
  a.corpus = ingest_corpus(options, pipeline);

  a.features = build_feature_matrices(a.corpus);
  FeatureSimilarities six = compute_similarities(a.features, a.corpus.dependencies);
  a.factors = cfg.auto_factors ? suggest_significance_factors(richness_of(a.features)) : cfg.factors;
  a.factors.validate();
  a.combined = combined_similarity(a.factors, six);

  SeedContext ctx;
  ctx.graph = &a.combined;
  ctx.inheritance = &six[Feature::Inheritance];
  for (const auto& e : a.corpus.entities) ctx.packages.push_back(e.package);
  a.search = search(ctx, a.search_config());
  if (a.search.audit.failures > 0)
    throw std::logic_error("incremental quality audit failed: " + a.search.audit.first_failure);

  a.index = RetrievalIndex::build(a.features.text_raw, a.features.class_raw, pipeline);
  finish_snapshot(a);
  if (six_out) *six_out = std::move(six);
  return a;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot write " + path.string() + ": " + ec.message());
}

Analysis run_pipeline(const RunConfig& cfg) {
  FeatureSimilarities six;
  Analysis a = analyze(cfg, &six);
  const std::filesystem::path dir = cfg.output;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());

  json resolved = cfg.to_json();
  resolved["resolvedFactors"] = a.factors.to_json();
  write_text_file(dir / "config.json", resolved.dump(1) + "\n");
  write_text_file(dir / "corpus.json", corpus_to_json(a.corpus).dump(1) + "\n");
  write_text_file(dir / "similarity.json", similarity_bundle(six, a.factors, a.combined).dump(1) + "\n");
  write_text_file(dir / "snapshot.json", snapshot_to_json(a.snapshot).dump(1) + "\n");
  write_text_file(dir / "interactions.graphml", graphml_document(a.snapshot));
  std::string trace = "# seed\titeration\tmq\tmqc\ttemp\tsnTag\n";
  for (const auto& t : a.search.trace) trace += format_trace_line(t) + "\n";
  write_text_file(dir / "trace.log", trace);
  return a;
}

Analysis load_analysis(const std::filesystem::path& dir) {
  auto read_json = [&](const char* name) {
    std::ifstream in(dir / name);
    if (!in) throw ConfigError("cannot read " + (dir / name).string() + " (run `archrec analyze` first)");
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError((dir / name).string() + ": " + e.what());
    }
  };
  Analysis a;
  const json cfg = read_json("config.json");
  json plain = cfg;
  plain.erase("resolvedFactors");
  a.config = RunConfig::from_json(plain);
  a.factors = SignificanceFactors::from_json(cfg.at("resolvedFactors"));
  a.corpus = corpus_from_json(read_json("corpus.json"));
  a.features = build_feature_matrices(a.corpus);
  const json sim = read_json("similarity.json");
  a.combined = matrix_from_triplets(a.corpus.size(), sim.at("combined"));
  a.snapshot = snapshot_from_json(read_json("snapshot.json"));
  if (a.snapshot.entities.size() != a.corpus.size())
    throw ConfigError("snapshot and corpus in " + dir.string() + " disagree on the class count");
  a.search.labels = a.snapshot.labels;
  a.search.quality = a.snapshot.quality;
  a.index = RetrievalIndex::build(a.features.text_raw, a.features.class_raw, text_pipeline(a.corpus.stemmer));
  return a;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string graphml_document(const ArchitectureSnapshot& s) {
  std::ostringstream x;
  x << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
    << "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
    << "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
       "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
    << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
    << "  <key id=\"size\" for=\"node\" attr.name=\"size\" attr.type=\"int\"/>\n"
    << "  <key id=\"methods\" for=\"edge\" attr.name=\"methods\" attr.type=\"string\"/>\n"
    << "  <graph id=\"interactions\" edgedefault=\"directed\">\n";
  const auto members = cluster_members(s.labels);
  for (int c = 0; c < s.cluster_count(); ++c) {
    std::string label;
    for (const auto& k : s.cluster_labels.at(c).concepts) label += (label.empty() ? "" : " ") + k.word;
    x << "    <node id=\"" << c << "\">\n"
      << "      <data key=\"label\">" << xml_escape(label) << "</data>\n"
      << "      <data key=\"size\">" << members[c].size() << "</data>\n"
      << "    </node>\n";
  }
  for (std::size_t i = 0; i < s.interactions.edges.size(); ++i) {
    const auto& e = s.interactions.edges[i];
    std::vector<std::string> names;
    for (const auto& m : e.methods) {
      std::string n = method_display(s, m);
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(std::move(n));
    }
    std::string joined;
    for (const auto& n : names) joined += (joined.empty() ? "" : ";") + n;
    x << "    <edge id=\"e" << i << "\" source=\"" << e.provider << "\" target=\"" << e.consumer << "\">\n"
      << "      <data key=\"methods\">" << xml_escape(joined) << "</data>\n"
      << "    </edge>\n";
  }
  x << "  </graph>\n</graphml>\n";
  return x.str();
}

void export_graphml(const ArchitectureSnapshot& s, const std::filesystem::path& path) {
  write_text_file(path, graphml_document(s));
}

}  // namespace archrec
