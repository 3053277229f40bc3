#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace archrec {

// Dense n x n symmetric matrix of doubles with a zero diagonal. Used both for
// per-feature similarity matrices and for the fused weighted graph that the
// clustering search runs on (vertices are row indices, weight(u, v) the cell).
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), cells_(n * n, 0.0) {}

  std::size_t size() const { return n_; }

  double operator()(std::size_t u, std::size_t v) const { return cells_[u * n_ + v]; }
  double weight(std::size_t u, std::size_t v) const { return cells_[u * n_ + v]; }

  // Writes both (u, v) and (v, u). Writes to the diagonal are ignored.
  void set(std::size_t u, std::size_t v, double value) {
    if (u == v) return;
    cells_[u * n_ + v] = value;
    cells_[v * n_ + u] = value;
  }

  std::span<const double> row(std::size_t u) const {
    return {cells_.data() + u * n_, n_};
  }

  // Sum of the row, i.e. the total weight incident to u.
  double strength(std::size_t u) const;

  // Sum over unordered pairs u < v.
  double total_weight() const;

  // Number of unordered pairs with positive weight.
  std::size_t positive_pair_count() const;

  std::size_t pair_count() const { return n_ < 2 ? 0 : n_ * (n_ - 1) / 2; }

  bool is_symmetric(double tol = 0.0) const;
  bool within_unit_range() const;

  const std::vector<double>& cells() const { return cells_; }

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> cells_;
};

using SimilarityMatrix = SymmetricMatrix;
// Complete weighted undirected graph over entities; weight = fused similarity.
using WeightedGraph = SymmetricMatrix;

}  // namespace archrec
