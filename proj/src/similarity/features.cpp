#include "archrec/similarity/features.hpp"

#include <map>

#include "archrec/ingest/text.hpp"

namespace archrec {

std::vector<NameSet> inheritance_closure(const std::vector<CodeEntity>& entities) {
  std::vector<NameSet> closed(entities.size());
  std::map<std::string, std::vector<std::size_t>> by_name;
  for (std::size_t i = 0; i < entities.size(); ++i) by_name[entities[i].name].push_back(i);
  for (std::size_t i = 0; i < entities.size(); ++i) {
    closed[i].insert(entities[i].name);
    for (const auto& parent : entities[i].inheritance_raw) {
      if (parent == entities[i].name) continue;
      closed[i].insert(parent);
      if (auto it = by_name.find(parent); it != by_name.end())
        for (std::size_t p : it->second) closed[p].insert(entities[i].name);
    }
  }
  return closed;
}

std::vector<std::string> method_concepts(const CodeEntity& e) {
  std::vector<std::string> out;
  for (const auto& m : e.public_methods) {
    auto words = extract_name_concepts(m.name);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

FeatureSet build_feature_matrices(const Corpus& corpus) {
  const std::size_t d = corpus.size();
  FeatureSet f;

  std::vector<std::map<std::string, double>> text_rows(d);
  std::vector<std::vector<std::string>> class_words(d);
  std::vector<std::vector<std::string>> method_words(d);
  f.package_paths.resize(d);
  f.public_method_counts.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const CodeEntity& e = corpus.entities[i];
    for (const auto& [token, count] : corpus.text[i]) text_rows[i][token] = count;
    class_words[i] = extract_name_concepts(e.name);
    method_words[i] = method_concepts(e);
    f.package_paths[i] = NameSet(e.package_path.begin(), e.package_path.end());
    f.public_method_counts[i] = static_cast<int>(e.public_methods.size());
  }

  f.text_raw = FeatureMatrix::from_rows(text_rows);
  f.class_raw = FeatureMatrix::from_concepts(class_words);
  f.method_raw = FeatureMatrix::from_concepts(method_words);
  f.text = apply_tf_idf(f.text_raw);
  f.class_names = apply_tf_idf(f.class_raw);
  f.method_names = apply_tf_idf(f.method_raw);
  f.inheritance = inheritance_closure(corpus.entities);
  return f;
}

}  // namespace archrec
