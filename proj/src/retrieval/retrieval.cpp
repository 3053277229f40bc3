#include "archrec/retrieval/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "archrec/core/error.hpp"

namespace archrec {

IdfTable::IdfTable(const FeatureMatrix& raw) : n_(raw.rows()) {
  const auto weights = idf_weights(raw);
  const auto df = raw.document_frequency();
  for (std::size_t c = 0; c < raw.cols(); ++c)
    if (df[c] > 0) idf_[raw.vocabulary()[c]] = weights[c];
}

double IdfTable::idf(const std::string& word) const {
  if (auto it = idf_.find(word); it != idf_.end()) return it->second;
  return n_ > 0 ? std::log(static_cast<double>(n_)) : 0.0;
}

TermVector weigh_terms(const TokenBag& words, const IdfTable& idf) {
  TermVector v;
  for (const auto& [word, count] : words) v[word] = count * idf.idf(word);
  return v;
}

TermVector text_to_vector(std::string_view text, const TextPipeline& pipeline, const IdfTable& idf) {
  return weigh_terms(pipeline.bag_of(text), idf);
}

TermVector concept_vector(std::string_view text, const IdfTable& idf) {
  TokenBag bag;
  for (const auto& w : tokenize_identifier(text)) bag.add(to_lower(w));
  return weigh_terms(bag, idf);
}

double cosine(const TermVector& a, const TermVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [w, x] : a) {
    na += x * x;
    if (auto it = b.find(w); it != b.end()) dot += x * it->second;
  }
  for (const auto& [w, y] : b) nb += y * y;
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

TermVector row_vector(const FeatureMatrix& m, std::size_t row) {
  TermVector v;
  for (const auto& e : m.row(row)) v[m.vocabulary()[e.col]] = e.value;
  return v;
}

RetrievalIndex RetrievalIndex::build(const FeatureMatrix& text_raw, const FeatureMatrix& class_raw,
                                     TextPipeline pipeline) {
  return {apply_tf_idf(text_raw), apply_tf_idf(class_raw), IdfTable(text_raw), IdfTable(class_raw),
          std::move(pipeline)};
}

ClusterVectors cluster_vectors(const std::vector<int>& labels, const FeatureMatrix& text,
                               const FeatureMatrix& class_names) {
  int k = 0;
  for (int c : labels) k = std::max(k, c + 1);
  ClusterVectors out{std::vector<TermVector>(k), std::vector<TermVector>(k)};
  for (std::size_t v = 0; v < labels.size(); ++v) {
    for (const auto& e : text.row(v)) out.text[labels[v]][text.vocabulary()[e.col]] += e.value;
    for (const auto& e : class_names.row(v)) out.names[labels[v]][class_names.vocabulary()[e.col]] += e.value;
  }
  return out;
}

std::vector<EntityMapping> map_entities(const std::vector<std::string>& descriptions, const ClusterVectors& clusters,
                                        const RetrievalIndex& index, double theta) {
  std::vector<EntityMapping> out;
  for (const auto& d : descriptions) {
    EntityMapping m{d, {}, {}};
    const TermVector text = text_to_vector(d, index.pipeline, index.text_idf);
    if (text.empty()) {
      m.diagnostic = "description has no usable words";
      out.push_back(std::move(m));
      continue;
    }
    const TermVector names = concept_vector(d, index.name_idf);
    for (std::size_t c = 0; c < clusters.text.size(); ++c) {
      const double s = 0.5 * (cosine(text, clusters.text[c]) + cosine(names, clusters.names[c]));
      if (s >= theta) m.clusters.push_back({static_cast<int>(c), s});
    }
    std::stable_sort(m.clusters.begin(), m.clusters.end(),
                     [](const ClusterMatch& a, const ClusterMatch& b) { return a.similarity > b.similarity; });
    out.push_back(std::move(m));
  }
  return out;
}

void QueryOptions::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0) || std::abs(alpha + beta - 1.0) > 1e-9)
    throw ConfigError("rank fusion weights must lie in [0,1] and sum to 1, got alpha=" + std::to_string(alpha) +
                      " beta=" + std::to_string(beta));
  if (r < 0) throw ConfigError("VSM list length must be non-negative");
}

std::vector<int> rank_descending(const std::vector<double>& scores) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<int> rank(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i) + 1;
  return rank;
}

std::vector<RankedClass> fuse_rankings(const std::vector<double>& vsm_scores, const SimilarityMatrix& combined,
                                       const QueryOptions& options) {
  options.validate();
  const int d = static_cast<int>(vsm_scores.size());
  const int r = options.r <= 0 || options.r > d ? d : options.r;

  const std::vector<int> vsm_rank_all = rank_descending(vsm_scores);
  std::vector<int> listed(r);
  for (int i = 0; i < d; ++i)
    if (vsm_rank_all[i] <= r) listed[vsm_rank_all[i] - 1] = i;

  std::vector<double> centroid(r, 0.0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (a != b) centroid[a] += combined(listed[a], listed[b]) / static_cast<double>(b + 1);

  // rank_descending breaks ties by position; positions follow VSM rank, so
  // re-rank with entity ids as the tie-break instead.
  std::vector<int> by_id(r);
  std::iota(by_id.begin(), by_id.end(), 0);
  std::stable_sort(by_id.begin(), by_id.end(), [&](int a, int b) {
    if (centroid[a] != centroid[b]) return centroid[a] > centroid[b];
    return listed[a] < listed[b];
  });
  std::vector<int> centroid_rank(r);
  for (int i = 0; i < r; ++i) centroid_rank[by_id[i]] = i + 1;

  std::vector<RankedClass> out;
  for (int a = 0; a < r; ++a)
    out.push_back({listed[a], options.alpha * (a + 1) + options.beta * centroid_rank[a], a + 1, centroid_rank[a],
                   vsm_scores[listed[a]], centroid[a]});
  std::stable_sort(out.begin(), out.end(), [](const RankedClass& x, const RankedClass& y) {
    if (x.final_score != y.final_score) return x.final_score < y.final_score;
    return x.entity < y.entity;
  });
  return out;
}

std::vector<RankedClass> query_classes(std::string_view query, const RetrievalIndex& index,
                                       const SimilarityMatrix& combined, const QueryOptions& options) {
  options.validate();
  const TermVector text = text_to_vector(query, index.pipeline, index.text_idf);
  if (text.empty()) throw UnanswerableQuery();
  const TermVector names = concept_vector(query, index.name_idf);
  const std::size_t d = index.text.rows();
  std::vector<double> vsm(d);
  for (std::size_t i = 0; i < d; ++i)
    vsm[i] = 0.5 * (cosine(text, row_vector(index.text, i)) + cosine(names, row_vector(index.class_names, i)));
  return fuse_rankings(vsm, combined, options);
}

}  // namespace archrec
