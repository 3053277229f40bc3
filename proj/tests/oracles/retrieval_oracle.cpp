#include "oracles/retrieval_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace oracle {

double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return dot / std::sqrt(na * nb);
}

namespace {

struct Family {
  std::vector<std::string> vocab;
  std::vector<std::vector<double>> rows;  // tf-idf
  std::vector<double> query;              // tf-idf, extended with query-only words
};

Family weigh(const std::vector<std::string>& vocab, const std::vector<std::vector<double>>& counts,
             const std::vector<std::string>& query_words) {
  const double n = static_cast<double>(counts.size());
  Family f{vocab, counts, {}};
  for (const auto& w : query_words)
    if (std::find(f.vocab.begin(), f.vocab.end(), w) == f.vocab.end()) f.vocab.push_back(w);
  for (auto& row : f.rows) row.resize(f.vocab.size(), 0.0);
  std::vector<double> idf(f.vocab.size());
  for (std::size_t t = 0; t < f.vocab.size(); ++t) {
    int df = 0;
    for (const auto& row : f.rows) df += row[t] > 0 ? 1 : 0;
    idf[t] = df == 0 ? std::log(n) : std::log(n / df);
  }
  for (auto& row : f.rows)
    for (std::size_t t = 0; t < row.size(); ++t) row[t] *= idf[t];
  f.query.assign(f.vocab.size(), 0.0);
  for (const auto& w : query_words) {
    const auto t = std::find(f.vocab.begin(), f.vocab.end(), w) - f.vocab.begin();
    f.query[t] += idf[t];
  }
  return f;
}

}  // namespace

std::vector<RankedRow> rank_query(const RetrievalCase& c) {
  const Family text = weigh(c.text_vocab, c.text_counts, c.query_text_words);
  const Family names = weigh(c.name_vocab, c.name_counts, c.query_name_words);
  const int n = static_cast<int>(c.text_counts.size());

  std::vector<RankedRow> rows(n);
  for (int i = 0; i < n; ++i) {
    rows[i].cls = i;
    rows[i].vsm_score =
        (dense_cosine(text.query, text.rows[i]) + dense_cosine(names.query, names.rows[i])) / 2.0;
  }
  auto by_score = [&](auto score) {
    std::vector<std::tuple<double, int>> keyed;
    for (int i = 0; i < n; ++i) keyed.emplace_back(-score(rows[i]), i);
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> rank(n);
    for (int r = 0; r < n; ++r) rank[std::get<1>(keyed[r])] = r + 1;
    return rank;
  };
  const auto vsm_rank = by_score([](const RankedRow& r) { return r.vsm_score; });
  for (int i = 0; i < n; ++i) rows[i].vsm_rank = vsm_rank[i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) rows[i].centroid_score += c.weights[i][j] / rows[j].vsm_rank;
  const auto centroid_rank = by_score([](const RankedRow& r) { return r.centroid_score; });
  for (int i = 0; i < n; ++i) {
    rows[i].centroid_rank = centroid_rank[i];
    rows[i].final_score = c.alpha * rows[i].vsm_rank + c.beta * rows[i].centroid_rank;
  }
  std::sort(rows.begin(), rows.end(), [](const RankedRow& a, const RankedRow& b) {
    return std::tie(a.final_score, a.cls) < std::tie(b.final_score, b.cls);
  });
  return rows;
}

}  // namespace oracle
