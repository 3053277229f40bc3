#include "archrec/ingest/entity.hpp"

#include <numeric>

namespace archrec {

std::string MethodSignature::signature() const {
  std::string out = "(";
  for (std::size_t i = 0; i < param_types.size(); ++i) {
    if (i) out += ',';
    out += param_types[i];
  }
  out += ')';
  out += return_type;
  return out;
}

MethodSignature MethodSignature::parse(std::string name, std::string_view signature) {
  MethodSignature sig;
  sig.name = std::move(name);
  const auto open = signature.find('(');
  const auto close = signature.rfind(')');
  if (open != 0 || close == std::string_view::npos) {
    sig.return_type = std::string(signature);
    return sig;
  }
  std::string_view params = signature.substr(1, close - 1);
  int depth = 0;
  std::string current;
  for (char c : params) {
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (c == ',' && depth == 0) {
      sig.param_types.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current += c;
    }
  }
  if (!current.empty()) sig.param_types.push_back(current);
  sig.return_type = std::string(signature.substr(close + 1));
  return sig;
}

std::string CodeEntity::qualified_name() const {
  return package.empty() ? name : package + "." + name;
}

bool CodeEntity::has_public_method(std::string_view method) const {
  return find_public_method(method) != nullptr;
}

const MethodSignature* CodeEntity::find_public_method(std::string_view method, int arity) const {
  const MethodSignature* first = nullptr;
  for (const auto& m : public_methods) {
    if (m.name != method) continue;
    if (arity < 0 || static_cast<int>(m.param_types.size()) == arity) return &m;
    if (!first) first = &m;
  }
  return first;
}

void TokenBag::add(const std::string& token, int count) {
  if (count <= 0) return;
  counts_[token] += count;
}

void TokenBag::merge(const TokenBag& other) {
  for (const auto& [token, count] : other.counts_) counts_[token] += count;
}

int TokenBag::count(const std::string& token) const {
  auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

long TokenBag::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0L,
                         [](long acc, const auto& kv) { return acc + kv.second; });
}

}  // namespace archrec
