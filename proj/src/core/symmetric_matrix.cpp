#include "archrec/core/symmetric_matrix.hpp"

#include <cmath>

namespace archrec {

double SymmetricMatrix::strength(std::size_t u) const {
  double s = 0.0;
  for (double w : row(u)) s += w;
  return s;
}

double SymmetricMatrix::total_weight() const {
  double s = 0.0;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v) s += cells_[u * n_ + v];
  return s;
}

std::size_t SymmetricMatrix::positive_pair_count() const {
  std::size_t count = 0;
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = u + 1; v < n_; ++v)
      if (cells_[u * n_ + v] > 0.0) ++count;
  return count;
}

bool SymmetricMatrix::is_symmetric(double tol) const {
  for (std::size_t u = 0; u < n_; ++u) {
    if (cells_[u * n_ + u] != 0.0) return false;
    for (std::size_t v = u + 1; v < n_; ++v)
      if (std::abs(cells_[u * n_ + v] - cells_[v * n_ + u]) > tol) return false;
  }
  return true;
}

bool SymmetricMatrix::within_unit_range() const {
  for (double w : cells_)
    if (!(w >= 0.0 && w <= 1.0)) return false;
  return true;
}

}  // namespace archrec
