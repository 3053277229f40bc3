#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "archrec/ingest/entity.hpp"

namespace archrec {

enum class Layer { UI, DataAccess, Models, Utilities };

std::string layer_name(Layer layer);  // "UI", "DA", "Models", "Utils"
Layer parse_layer(std::string_view name);

// Glob patterns (`*`, `?`) are matched against both the package and the
// qualified class name.
struct ScopingRules {
  std::map<Layer, std::vector<std::string>> patterns;
  std::set<std::string> include;  // qualified names forced into the business layer
  std::set<std::string> exclude;  // qualified names forced out (reported as Utils unless a pattern says otherwise)
  bool use_default_heuristics = false;

  // Throws ConfigError when include and exclude overlap.
  void validate() const;

  // Key-value file: `ui|da|models|utils = glob, glob`, `include = a.B, c.D`,
  // `exclude = ...`, `defaults = true|false`; '#' starts a comment.
  static ScopingRules load(const std::filesystem::path& path);
  static ScopingRules parse(std::string_view text, const std::string& origin = "<rules>");
};

// Layer an entity is excluded into, or nullopt when it stays in the business layer.
std::optional<Layer> classify_entity(const CodeEntity& e, const ScopingRules& rules);

struct ScopeResult {
  std::vector<CodeEntity> business;  // ids re-indexed densely
  std::map<Layer, std::vector<CodeEntity>> excluded;  // ids keep input order
  std::vector<int> original_ids;     // business id -> input id
};

// Throws IngestError("nothing to cluster") when the business layer comes out empty.
ScopeResult scope_corpus(const std::vector<CodeEntity>& entities, const ScopingRules& rules);

bool glob_match(std::string_view pattern, std::string_view text);

}  // namespace archrec
