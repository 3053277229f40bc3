#pragma once

#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "archrec/ingest/entity.hpp"

namespace archrec {

// Splits on whitespace/punctuation, then on camel-case (aB -> a|B), acronym
// (ABc -> A|Bc) and letter/digit boundaries. Order is preserved.
std::vector<std::string> tokenize_identifier(std::string_view s);

// Concept words of a class or method identifier: the tokenizer output as is,
// no stop-word filtering and no stemming.
std::vector<std::string> extract_name_concepts(std::string_view identifier);

// "com.atl.application.controlManager" -> com, atl, application, control, Manager
std::vector<std::string> extract_package_path(std::string_view packaging);

// Parses a type declaration header such as
// "class ClientAnalytics implements Business, Analytics, Client" and returns the
// extended/implemented type names (generic arguments and qualifiers stripped).
std::set<std::string> extract_inheritance_list(std::string_view declaration);

class Stemmer {
 public:
  virtual ~Stemmer() = default;
  // `word` is lowercase ASCII.
  virtual std::string stem(std::string_view word) const = 0;
  virtual std::string name() const = 0;
};

// Porter (1980), original algorithm.
class PorterStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override;
  std::string name() const override { return "porter"; }
};

class IdentityStemmer final : public Stemmer {
 public:
  std::string stem(std::string_view word) const override { return std::string(word); }
  std::string name() const override { return "identity"; }
};

std::shared_ptr<const Stemmer> make_stemmer(std::string_view name);

const std::unordered_set<std::string>& java_reserved_words();
const std::unordered_set<std::string>& english_stop_words();

// Lowercases, drops reserved/stop/numeric words, stems (to a fixpoint) and
// aggregates. Words whose stem is itself a reserved or stop word are dropped
// too, which keeps the function idempotent on its own output.
TokenBag normalize_tokens(std::span<const std::string> words,
                          const std::unordered_set<std::string>& reserved,
                          const std::unordered_set<std::string>& stop,
                          const Stemmer& stemmer);

// Reserved words, stop words and a stemmer, bundled for the IR-token pipeline.
struct TextPipeline {
  std::unordered_set<std::string> reserved;
  std::unordered_set<std::string> stop;
  std::shared_ptr<const Stemmer> stemmer;

  static TextPipeline java_default();

  TokenBag normalize(std::span<const std::string> words) const;
  // tokenize_identifier followed by normalize.
  TokenBag bag_of(std::string_view text) const;
};

// IR tokens of one entity: comments and public-variable identifiers.
TokenBag extract_textual_features(const CodeEntity& entity, const TextPipeline& pipeline);

std::string to_lower(std::string_view s);

}  // namespace archrec
