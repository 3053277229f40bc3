#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace archrec {

// Sparse document-term matrix in CSR form. Columns are sorted by key; each
// column may also carry a display label (the first surface form seen), which
// concept matrices use because their keys are case-folded.
class FeatureMatrix {
 public:
  struct Entry {
    int col;
    double value;
    bool operator==(const Entry&) const = default;
  };

  FeatureMatrix() = default;

  // Vocabulary = sorted union of the row keys. Zero values are dropped.
  static FeatureMatrix from_rows(const std::vector<std::map<std::string, double>>& rows);

  // Concept words are matched case-insensitively; the label keeps the first
  // surface form in row order.
  static FeatureMatrix from_concepts(const std::vector<std::vector<std::string>>& words);

  std::size_t rows() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t cols() const { return vocabulary_.size(); }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const std::string& label(std::size_t col) const { return labels_[col]; }
  int column(const std::string& key) const;  // -1 when absent

  std::span<const Entry> row(std::size_t r) const {
    return {entries_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
  }
  double at(std::size_t r, std::size_t c) const;
  std::vector<double> dense_row(std::size_t r) const;
  double row_sum(std::size_t r) const;

  // Number of rows with a positive value in each column.
  std::vector<int> document_frequency() const;

  bool operator==(const FeatureMatrix&) const = default;

 private:
  friend FeatureMatrix apply_tf_idf(const FeatureMatrix& m);

  std::vector<std::string> vocabulary_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Entry> entries_;
};

// ln(d / n_j) per column; 0 for columns no row uses.
std::vector<double> idf_weights(const FeatureMatrix& m);

// Multiplies every cell by ln(d / n_j). Zero cells and column supports are preserved
// except that columns present in every row become all-zero.
FeatureMatrix apply_tf_idf(const FeatureMatrix& m);

}  // namespace archrec
