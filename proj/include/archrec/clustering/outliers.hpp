#pragma once

#include <vector>

#include "archrec/clustering/seeds.hpp"

namespace archrec {

// Fisher's G1: n / ((n-1)(n-2)) * sum (x - mean)^3 / s^3 with the (n-1)
// standard deviation. 0 when n < 3 or all sizes are equal.
double skewness_g1(const std::vector<double>& sizes);

// 75 -> 87 -> 93 -> 96 -> 97 -> 98 -> 99: halves the distance to 99 below 95,
// single steps above.
double next_percentile(double alpha);

// Stoer-Wagner global minimum cut of the subgraph induced by `nodes`.
// Returns the side containing the last merged vertex; ties favour lower ids.
struct MinCut {
  double weight = 0.0;
  std::vector<int> side;  // subset of `nodes`, ascending
};
MinCut stoer_wagner(const WeightedGraph& g, const std::vector<int>& nodes);

struct OutlierResult {
  std::vector<int> labels;
  double percentile = 75.0;
  int iterations = 0;
  int splits = 0;
  bool capped = false;  // iteration cap reached before the sizes became clean
};

// CC seeding at increasing edge percentiles while G1 of the cluster sizes exceeds 2;
// at the 99th percentile, clusters larger than the median are split by repeated
// minimum cuts.
OutlierResult eliminate_outliers(const SeedContext& ctx, int max_iterations = 20);

}  // namespace archrec
