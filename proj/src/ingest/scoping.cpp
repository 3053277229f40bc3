#include "archrec/ingest/scoping.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "archrec/core/error.hpp"
#include "archrec/ingest/text.hpp"

namespace archrec {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto comma = s.find(',', start);
    if (comma == std::string_view::npos) comma = s.size();
    auto item = trim(s.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

std::optional<Layer> default_layer(const CodeEntity& e) {
  std::size_t start = 0;
  const std::string& pkg = e.package;
  while (start <= pkg.size() && !pkg.empty()) {
    auto dot = pkg.find('.', start);
    if (dot == std::string::npos) dot = pkg.size();
    const std::string seg = to_lower(std::string_view(pkg).substr(start, dot - start));
    if (seg == "ui" || seg == "view" || seg == "web") return Layer::UI;
    if (seg == "dao" || seg == "persistence" || seg == "repository") return Layer::DataAccess;
    if (seg == "model" || seg == "dto" || seg == "entity") return Layer::Models;
    if (seg == "util" || seg == "utils" || seg == "common" || seg == "helper") return Layer::Utilities;
    start = dot + 1;
  }
  return std::nullopt;
}

}  // namespace

std::string layer_name(Layer layer) {
  switch (layer) {
    case Layer::UI: return "UI";
    case Layer::DataAccess: return "DA";
    case Layer::Models: return "Models";
    case Layer::Utilities: return "Utils";
  }
  return "?";
}

Layer parse_layer(std::string_view name) {
  const std::string n = to_lower(name);
  if (n == "ui") return Layer::UI;
  if (n == "da") return Layer::DataAccess;
  if (n == "models") return Layer::Models;
  if (n == "utils") return Layer::Utilities;
  throw ConfigError("unknown layer '" + std::string(name) + "' (expected UI|DA|Models|Utils)");
}

bool glob_match(std::string_view pattern, std::string_view text) {
  return fnmatch(std::string(pattern).c_str(), std::string(text).c_str(), 0) == 0;
}

void ScopingRules::validate() const {
  std::vector<std::string> both;
  std::set_intersection(include.begin(), include.end(), exclude.begin(), exclude.end(),
                        std::back_inserter(both));
  if (!both.empty())
    throw ConfigError("scoping rules list '" + both.front() + "' in both include and exclude");
}

ScopingRules ScopingRules::parse(std::string_view text, const std::string& origin) {
  ScopingRules rules;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(number) + ": expected 'key = value'");
    const std::string key = to_lower(trim(std::string_view(line).substr(0, eq)));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "include") {
      for (auto& v : split_list(value)) rules.include.insert(v);
    } else if (key == "exclude") {
      for (auto& v : split_list(value)) rules.exclude.insert(v);
    } else if (key == "defaults") {
      const std::string v = to_lower(value);
      if (v != "true" && v != "false")
        throw ConfigError(origin + ":" + std::to_string(number) + ": defaults must be true or false");
      rules.use_default_heuristics = v == "true";
    } else if (key == "ui" || key == "da" || key == "models" || key == "utils") {
      auto& list = rules.patterns[parse_layer(key)];
      for (auto& v : split_list(value)) list.push_back(v);
    } else {
      throw ConfigError(origin + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    }
  }
  rules.validate();
  return rules;
}

ScopingRules ScopingRules::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open scoping rules");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

std::optional<Layer> classify_entity(const CodeEntity& e, const ScopingRules& rules) {
  const std::string qualified = e.qualified_name();
  if (rules.include.count(qualified)) return std::nullopt;
  std::optional<Layer> matched;
  for (const auto& [layer, globs] : rules.patterns) {
    for (const auto& g : globs) {
      if (glob_match(g, e.package) || glob_match(g, qualified)) {
        matched = layer;
        break;
      }
    }
    if (matched) break;
  }
  if (rules.exclude.count(qualified)) return matched.value_or(Layer::Utilities);
  if (matched) return matched;
  if (rules.use_default_heuristics) return default_layer(e);
  return std::nullopt;
}

ScopeResult scope_corpus(const std::vector<CodeEntity>& entities, const ScopingRules& rules) {
  rules.validate();
  ScopeResult out;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto layer = classify_entity(entities[i], rules);
    if (layer) {
      out.excluded[*layer].push_back(entities[i]);
      continue;
    }
    CodeEntity e = entities[i];
    e.id = static_cast<int>(out.business.size());
    out.business.push_back(std::move(e));
    out.original_ids.push_back(static_cast<int>(i));
  }
  if (out.business.empty()) throw IngestError("nothing to cluster: every entity was scoped out");
  return out;
}

}  // namespace archrec
