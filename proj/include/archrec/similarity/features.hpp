#pragma once

#include <set>
#include <string>
#include <vector>

#include "archrec/ingest/corpus.hpp"
#include "archrec/similarity/feature_matrix.hpp"

namespace archrec {

using NameSet = std::set<std::string>;

struct FeatureSet {
  FeatureMatrix text_raw;  // C before weighting
  FeatureMatrix text;      // C
  FeatureMatrix class_raw;
  FeatureMatrix class_names;  // W_class
  FeatureMatrix method_raw;
  FeatureMatrix method_names;  // W_method
  std::vector<NameSet> package_paths;
  std::vector<NameSet> inheritance;  // closed lists W_in
  std::vector<int> public_method_counts;

  std::size_t size() const { return public_method_counts.size(); }
};

// Own name, the raw list, and the name of every class whose raw list names this one.
std::vector<NameSet> inheritance_closure(const std::vector<CodeEntity>& entities);

// Concept words of all public method names of an entity, in declaration order.
std::vector<std::string> method_concepts(const CodeEntity& e);

FeatureSet build_feature_matrices(const Corpus& corpus);

}  // namespace archrec
