#include "archrec/similarity/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "archrec/core/error.hpp"

namespace archrec {

using nlohmann::json;

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t r = 0; r < u.size(); ++r) {
    dot += u[r] * v[r];
    nu += u[r] * u[r];
    nv += v[r] * v[r];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), 0.0, 1.0);
}

double minmax_similarity(std::span<const double> u, std::span<const double> v) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t r = 0; r < u.size(); ++r) {
    lo += std::min(u[r], v[r]);
    hi += std::max(u[r], v[r]);
  }
  if (hi == 0.0) return 1.0;
  return lo / hi;
}

double jaccard_similarity(const NameSet& a, const NameSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

namespace {

// Fills the upper triangle with cell(i, j) and mirrors it. Rows are handed out
// dynamically because the work per row shrinks with i.
template <typename Cell>
SimilarityMatrix fill_pairs(std::size_t n, Exec exec, Cell cell) {
  SimilarityMatrix s(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, cell(i, j));
  } else {
    for (std::ptrdiff_t i = 0; i < rows; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s.set(i, j, cell(i, j));
  }
  return s;
}

double sparse_dot(std::span<const FeatureMatrix::Entry> a, std::span<const FeatureMatrix::Entry> b) {
  double dot = 0.0;
  std::size_t x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x].col < b[y].col) ++x;
    else if (b[y].col < a[x].col) ++y;
    else dot += a[x++].value * b[y++].value;
  }
  return dot;
}

double sparse_min_sum(std::span<const FeatureMatrix::Entry> a, std::span<const FeatureMatrix::Entry> b) {
  double s = 0.0;
  std::size_t x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x].col < b[y].col) ++x;
    else if (b[y].col < a[x].col) ++y;
    else s += std::min(a[x++].value, b[y++].value);
  }
  return s;
}

}  // namespace

SimilarityMatrix pairwise_cosine(const FeatureMatrix& m, Exec exec) {
  std::vector<double> norm(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (const auto& e : m.row(i)) s += e.value * e.value;
    norm[i] = std::sqrt(s);
  }
  return fill_pairs(m.rows(), exec, [&](std::size_t i, std::size_t j) {
    if (norm[i] == 0.0 || norm[j] == 0.0) return 0.0;
    return std::clamp(sparse_dot(m.row(i), m.row(j)) / (norm[i] * norm[j]), 0.0, 1.0);
  });
}

SimilarityMatrix pairwise_minmax(const FeatureMatrix& m, Exec exec) {
  std::vector<double> total(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) total[i] = m.row_sum(i);
  return fill_pairs(m.rows(), exec, [&](std::size_t i, std::size_t j) {
    const double lo = sparse_min_sum(m.row(i), m.row(j));
    const double hi = total[i] + total[j] - lo;
    if (hi <= 0.0) return 0.0;
    return std::clamp(lo / hi, 0.0, 1.0);
  });
}

SimilarityMatrix pairwise_jaccard(const std::vector<NameSet>& sets, Exec exec) {
  return fill_pairs(sets.size(), exec,
                    [&](std::size_t i, std::size_t j) { return jaccard_similarity(sets[i], sets[j]); });
}

SimilarityMatrix structural_similarity(const DependencyGraph& g, const std::vector<int>& public_method_counts) {
  const std::size_t n = static_cast<std::size_t>(g.node_count);
  SimilarityMatrix out(n);

  // (caller, callee, method) -> number of call sites
  std::map<std::tuple<int, int, std::string>, double> collapsed;
  for (const auto& e : g.edges)
    if (e.caller != e.callee) collapsed[{e.caller, e.callee, e.method.name}] += 1.0;

  std::map<std::pair<int, std::string>, double> fan_in;
  for (const auto& [key, count] : collapsed) fan_in[{std::get<1>(key), std::get<2>(key)}] += count;

  std::vector<double> pair(n * n, 0.0);
  for (const auto& [key, count] : collapsed) {
    const auto& [u, v, method] = key;
    const double weighted = count / fan_in.at({v, method});
    const auto a = static_cast<std::size_t>(std::min(u, v));
    const auto b = static_cast<std::size_t>(std::max(u, v));
    pair[a * n + b] += weighted;
  }

  double mu = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const int pm = public_method_counts[a] + public_method_counts[b];
      double& w = pair[a * n + b];
      w = pm > 0 ? w / pm : 0.0;
      mu = std::max(mu, w);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const double w = pair[a * n + b];
      out.set(a, b, mu > 0.0 ? w / mu : w);
    }
  return out;
}

std::string feature_name(Feature f) {
  switch (f) {
    case Feature::Textual: return "textual";
    case Feature::ClassName: return "class";
    case Feature::MethodName: return "method";
    case Feature::Packaging: return "packaging";
    case Feature::Inheritance: return "inheritance";
    case Feature::Structural: return "structural";
  }
  return "?";
}

std::string SignificanceFactors::describe() const {
  std::ostringstream out;
  double sum = 0.0;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (f) out << ", ";
    out << feature_name(static_cast<Feature>(f)) << '=' << alpha[f];
    sum += alpha[f];
  }
  out << " (sum " << sum << ')';
  return out.str();
}

void SignificanceFactors::validate() const {
  double sum = 0.0;
  for (double a : alpha) {
    if (!(a >= 0.0 && a <= 1.0))
      throw ConfigError("significance factors must each lie in [0, 1]: " + describe());
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("significance factors must sum to 1: " + describe());
}

json SignificanceFactors::to_json() const {
  json j = json::object();
  for (std::size_t f = 0; f < kFeatureCount; ++f) j[feature_name(static_cast<Feature>(f))] = alpha[f];
  return j;
}

SignificanceFactors SignificanceFactors::from_json(const json& j) {
  SignificanceFactors s;
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (feature_name(static_cast<Feature>(f)) == key) {
        if (!value.is_number()) throw ConfigError("significance factor '" + key + "' must be a number");
        s.alpha[f] = value.get<double>();
        known = true;
      }
    }
    if (!known) throw ConfigError("unknown significance factor '" + key + "'");
  }
  return s;
}

FeatureSimilarities compute_similarities(const FeatureSet& features, const DependencyGraph& g, Exec exec) {
  FeatureSimilarities six;
  six[Feature::Textual] = pairwise_cosine(features.text, exec);
  six[Feature::ClassName] = pairwise_minmax(features.class_names, exec);
  six[Feature::MethodName] = pairwise_minmax(features.method_names, exec);
  six[Feature::Packaging] = pairwise_jaccard(features.package_paths, exec);
  six[Feature::Inheritance] = pairwise_jaccard(features.inheritance, exec);
  six[Feature::Structural] = structural_similarity(g, features.public_method_counts);
  return six;
}

WeightedGraph combined_similarity(const SignificanceFactors& factors, const FeatureSimilarities& six, Exec exec) {
  factors.validate();
  const std::size_t n = six.size();
  for (const auto& m : six.delta)
    if (m.size() != n) throw ConfigError("similarity matrices differ in dimension");
  return fill_pairs(n, exec, [&](std::size_t i, std::size_t j) {
    double w = 0.0;
    for (std::size_t f = 0; f < kFeatureCount; ++f) w += factors.alpha[f] * six.delta[f](i, j);
    return std::clamp(w, 0.0, 1.0);
  });
}

RichnessStats richness_of(const FeatureSet& features) {
  RichnessStats r;
  for (std::size_t i = 0; i < features.size(); ++i) {
    r.textual.push_back(features.text_raw.row_sum(i));
    r.class_name.push_back(features.class_raw.row_sum(i));
    r.method_name.push_back(features.method_raw.row_sum(i));
  }
  return r;
}

SignificanceFactors suggest_significance_factors(const RichnessStats& stats) {
  SignificanceFactors s;
  auto adjust = [&](Feature f, const std::vector<double>& xs) {
    if (xs.empty()) return;
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (mean == 0.0) {
      s[f] = 0.0;
      return;
    }
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double cv = std::sqrt(var / n) / mean;
    if (cv > 1.0) s[f] *= 0.5;
  };
  adjust(Feature::Textual, stats.textual);
  adjust(Feature::ClassName, stats.class_name);
  adjust(Feature::MethodName, stats.method_name);
  const double sum = std::accumulate(s.alpha.begin(), s.alpha.end(), 0.0);
  for (double& a : s.alpha) a /= sum;
  return s;
}

json matrix_triplets(const SymmetricMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) > 0.0) out.push_back(json::array({i, j, m(i, j)}));
  return out;
}

SymmetricMatrix matrix_from_triplets(std::size_t n, const json& triplets) {
  SymmetricMatrix m(n);
  for (const auto& t : triplets) {
    const auto i = t.at(0).get<std::size_t>();
    const auto j = t.at(1).get<std::size_t>();
    if (i >= n || j >= n) throw std::out_of_range("similarity triplet index out of range");
    m.set(i, j, t.at(2).get<double>());
  }
  return m;
}

json similarity_bundle(const FeatureSimilarities& six, const SignificanceFactors& factors,
                       const WeightedGraph& combined) {
  json features = json::object();
  for (std::size_t f = 0; f < kFeatureCount; ++f)
    features[feature_name(static_cast<Feature>(f))] = matrix_triplets(six.delta[f]);
  return {{"schemaVersion", 1},
          {"size", combined.size()},
          {"factors", factors.to_json()},
          {"features", features},
          {"combined", matrix_triplets(combined)}};
}

namespace reference {

SimilarityMatrix pairwise_cosine(const FeatureMatrix& m) {
  SimilarityMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto u = m.dense_row(i);
    for (std::size_t j = i + 1; j < m.rows(); ++j) s.set(i, j, cosine_similarity(u, m.dense_row(j)));
  }
  return s;
}

SimilarityMatrix pairwise_minmax(const FeatureMatrix& m) {
  SimilarityMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto u = m.dense_row(i);
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      const auto v = m.dense_row(j);
      const bool both_zero = std::all_of(u.begin(), u.end(), [](double x) { return x == 0.0; }) &&
                             std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
      s.set(i, j, both_zero ? 0.0 : minmax_similarity(u, v));
    }
  }
  return s;
}

SimilarityMatrix pairwise_jaccard(const std::vector<NameSet>& sets) {
  SimilarityMatrix s(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      NameSet both;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                            std::inserter(both, both.end()));
      NameSet either;
      std::set_union(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                     std::inserter(either, either.end()));
      s.set(i, j, either.empty() ? 0.0 : static_cast<double>(both.size()) / either.size());
    }
  return s;
}

WeightedGraph combined_similarity(const SignificanceFactors& factors, const FeatureSimilarities& six) {
  factors.validate();
  WeightedGraph g(six.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      double w = 0.0;
      for (std::size_t f = 0; f < kFeatureCount; ++f) w += factors.alpha[f] * six.delta[f](i, j);
      g.set(i, j, w);
    }
  return g;
}

}  // namespace reference

}  // namespace archrec
