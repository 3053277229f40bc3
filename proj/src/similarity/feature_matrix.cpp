#include "archrec/similarity/feature_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "archrec/ingest/text.hpp"

namespace archrec {

FeatureMatrix FeatureMatrix::from_rows(const std::vector<std::map<std::string, double>>& rows) {
  FeatureMatrix m;
  std::map<std::string, int> index;
  for (const auto& row : rows)
    for (const auto& [key, value] : row)
      if (value != 0.0) index.emplace(key, 0);
  int next = 0;
  for (auto& [key, col] : index) {
    col = next++;
    m.vocabulary_.push_back(key);
  }
  m.labels_ = m.vocabulary_;
  m.offsets_.assign(1, 0);
  for (const auto& row : rows) {
    for (const auto& [key, value] : row)
      if (value != 0.0) m.entries_.push_back({index.at(key), value});
    m.offsets_.push_back(m.entries_.size());
  }
  return m;
}

FeatureMatrix FeatureMatrix::from_concepts(const std::vector<std::vector<std::string>>& words) {
  std::vector<std::map<std::string, double>> rows(words.size());
  std::map<std::string, std::string> surface;
  for (std::size_t r = 0; r < words.size(); ++r) {
    for (const auto& w : words[r]) {
      const std::string key = to_lower(w);
      rows[r][key] += 1.0;
      surface.emplace(key, w);
    }
  }
  FeatureMatrix m = from_rows(rows);
  for (std::size_t c = 0; c < m.vocabulary_.size(); ++c) m.labels_[c] = surface.at(m.vocabulary_[c]);
  return m;
}

int FeatureMatrix::column(const std::string& key) const {
  auto it = std::lower_bound(vocabulary_.begin(), vocabulary_.end(), key);
  if (it == vocabulary_.end() || *it != key) return -1;
  return static_cast<int>(it - vocabulary_.begin());
}

double FeatureMatrix::at(std::size_t r, std::size_t c) const {
  for (const auto& e : row(r))
    if (e.col == static_cast<int>(c)) return e.value;
  return 0.0;
}

std::vector<double> FeatureMatrix::dense_row(std::size_t r) const {
  std::vector<double> out(cols(), 0.0);
  for (const auto& e : row(r)) out[e.col] = e.value;
  return out;
}

double FeatureMatrix::row_sum(std::size_t r) const {
  double s = 0.0;
  for (const auto& e : row(r)) s += e.value;
  return s;
}

std::vector<int> FeatureMatrix::document_frequency() const {
  std::vector<int> df(cols(), 0);
  for (const auto& e : entries_)
    if (e.value > 0.0) ++df[e.col];
  return df;
}

std::vector<double> idf_weights(const FeatureMatrix& m) {
  const auto df = m.document_frequency();
  const double d = static_cast<double>(m.rows());
  std::vector<double> idf(df.size(), 0.0);
  for (std::size_t j = 0; j < df.size(); ++j)
    if (df[j] > 0) idf[j] = std::log(d / df[j]);
  return idf;
}

FeatureMatrix apply_tf_idf(const FeatureMatrix& m) {
  const auto idf = idf_weights(m);
  const auto df = m.document_frequency();
  FeatureMatrix out = m;
  for (auto& e : out.entries_)
    if (df[e.col] > 0) e.value *= idf[e.col];
  return out;
}

}  // namespace archrec
