#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace archrec {

struct MethodSignature {
  std::string name;
  std::vector<std::string> param_types;
  std::string return_type;

  // Canonical "(T1,T2)R" rendering used in call-edge files and reports.
  std::string signature() const;
  // Parses the "(T1,T2)R" form; anything unparseable becomes the return type.
  static MethodSignature parse(std::string name, std::string_view signature);

  bool operator==(const MethodSignature&) const = default;
  auto operator<=>(const MethodSignature&) const = default;
};

// One analyzed class. `id` is the index into corpus order.
struct CodeEntity {
  int id = 0;
  std::string name;
  std::string package;                    // dotted, as declared
  std::vector<std::string> package_path;  // dot-split then camel-split segments
  std::vector<MethodSignature> public_methods;
  std::vector<std::string> public_variables;
  std::vector<std::string> comments;
  std::set<std::string> inheritance_raw;  // extends + implements, own name excluded
  std::string source_path;
  int source_line = 0;

  std::string qualified_name() const;
  bool has_public_method(std::string_view method) const;
  const MethodSignature* find_public_method(std::string_view method, int arity = -1) const;

  bool operator==(const CodeEntity&) const = default;
};

// Post-normalization IR token multiset. Never stores a zero count.
class TokenBag {
 public:
  void add(const std::string& token, int count = 1);
  void merge(const TokenBag& other);

  int count(const std::string& token) const;
  std::size_t distinct() const { return counts_.size(); }
  long total() const;
  bool empty() const { return counts_.empty(); }

  const std::map<std::string, int>& counts() const { return counts_; }
  auto begin() const { return counts_.begin(); }
  auto end() const { return counts_.end(); }

  bool operator==(const TokenBag&) const = default;

 private:
  std::map<std::string, int> counts_;
};

}  // namespace archrec
