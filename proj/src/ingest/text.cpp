#include "archrec/ingest/text.hpp"

#include <cctype>

#include "archrec/core/error.hpp"

namespace archrec {

namespace {

enum class CharClass { Separator, Upper, Lower, Digit };

CharClass classify(unsigned char c) {
  if (c >= 0x80) return CharClass::Lower;  // non-ASCII bytes stay inside words
  if (std::isupper(c)) return CharClass::Upper;
  if (std::islower(c)) return CharClass::Lower;
  if (std::isdigit(c)) return CharClass::Digit;
  return CharClass::Separator;
}

void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < chunk.size(); ++i) {
    const CharClass prev = classify(chunk[i - 1]);
    const CharClass cur = classify(chunk[i]);
    bool boundary = false;
    if ((prev == CharClass::Digit) != (cur == CharClass::Digit)) {
      boundary = true;
    } else if (prev == CharClass::Lower && cur == CharClass::Upper) {
      boundary = true;
    } else if (prev == CharClass::Upper && cur == CharClass::Upper && i + 1 < chunk.size() &&
               classify(chunk[i + 1]) == CharClass::Lower) {
      boundary = true;
    }
    if (boundary) {
      out.emplace_back(chunk.substr(start, i - start));
      start = i;
    }
  }
  if (start < chunk.size()) out.emplace_back(chunk.substr(start));
}

bool is_numeric(std::string_view w) {
  if (w.empty()) return false;
  for (unsigned char c : w)
    if (!std::isdigit(c)) return false;
  return true;
}

std::string strip_type(std::string_view raw) {
  std::string name;
  int depth = 0;
  for (char c : raw) {
    if (c == '<') ++depth;
    else if (c == '>') --depth;
    else if (depth == 0 && !std::isspace(static_cast<unsigned char>(c))) name += c;
  }
  const auto dot = name.rfind('.');
  if (dot != std::string::npos) name = name.substr(dot + 1);
  return name;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> tokenize_identifier(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && classify(s[i]) == CharClass::Separator) ++i;
    std::size_t j = i;
    while (j < s.size() && classify(s[j]) != CharClass::Separator) ++j;
    if (j > i) split_chunk(s.substr(i, j - i), out);
    i = j;
  }
  return out;
}

std::vector<std::string> extract_name_concepts(std::string_view identifier) {
  return tokenize_identifier(identifier);
}

std::vector<std::string> extract_package_path(std::string_view packaging) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= packaging.size()) {
    auto dot = packaging.find('.', start);
    if (dot == std::string_view::npos) dot = packaging.size();
    auto segment = tokenize_identifier(packaging.substr(start, dot - start));
    out.insert(out.end(), segment.begin(), segment.end());
    start = dot + 1;
  }
  return out;
}

std::set<std::string> extract_inheritance_list(std::string_view declaration) {
  // Walk the header word by word; a comma-separated type list follows each of
  // the two keywords and ends at the other keyword, '{' or end of input.
  std::set<std::string> out;
  std::string current;
  bool in_list = false;
  int depth = 0;
  std::string word;
  std::string self_name;
  bool expect_name = false;

  auto flush_type = [&] {
    if (in_list) {
      auto name = strip_type(current);
      if (!name.empty() && name != self_name) out.insert(name);
    }
    current.clear();
  };

  std::size_t i = 0;
  while (i < declaration.size()) {
    const char c = declaration[i];
    if (c == '{') break;
    if (c == '<') ++depth;
    if (c == '>') --depth;
    if (depth == 0 && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')) {
      std::size_t j = i;
      while (j < declaration.size() &&
             (std::isalnum(static_cast<unsigned char>(declaration[j])) || declaration[j] == '_' ||
              declaration[j] == '$'))
        ++j;
      word = std::string(declaration.substr(i, j - i));
      if (word == "extends" || word == "implements" || word == "permits") {
        flush_type();
        in_list = word != "permits";
      } else if (word == "class" || word == "interface" || word == "enum" || word == "record") {
        expect_name = true;
      } else if (expect_name) {
        self_name = word;
        expect_name = false;
      } else if (in_list) {
        current += word;
      }
      i = j;
      continue;
    }
    if (in_list) {
      if (c == ',' && depth == 0) {
        flush_type();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        current += c;
      }
    }
    ++i;
  }
  flush_type();
  return out;
}

// ---------------------------------------------------------------------------
// Porter stemmer

namespace {

class PorterState {
 public:
  explicit PorterState(std::string word) : b_(std::move(word)), k_(static_cast<int>(b_.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b[0..j_].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool doublec(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return !(ch == 'w' || ch == 'x' || ch == 'y');
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(static_cast<std::size_t>(k_ - len + 1), len) != s) return false;
    j_ = k_ - len;
    return true;
  }

  void setto(std::string_view s) {
    b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
    k_ = j_ + static_cast<int>(s.size());
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void r(std::string_view s) {
    if (m() > 0) setto(s);
  }

  void step1ab() {
    if (b_[k_] == 's') {
      if (ends("sses")) k_ -= 2;
      else if (ends("ies")) setto("i");
      else if (b_[k_ - 1] != 's') --k_;
    }
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      if (ends("at")) setto("ate");
      else if (ends("bl")) setto("ble");
      else if (ends("iz")) setto("ize");
      else if (doublec(k_)) {
        --k_;
        const char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else {
        j_ = k_;
        if (m() == 1 && cvc(k_)) setto("e");
      }
    }
    b_.resize(static_cast<std::size_t>(k_ + 1));
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
  }

  void step2() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a':
        if (ends("ational")) { r("ate"); break; }
        if (ends("tional")) { r("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { r("ence"); break; }
        if (ends("anci")) { r("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { r("ize"); break; }
        break;
      case 'l':
        if (ends("abli")) { r("able"); break; }
        if (ends("alli")) { r("al"); break; }
        if (ends("entli")) { r("ent"); break; }
        if (ends("eli")) { r("e"); break; }
        if (ends("ousli")) { r("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { r("ize"); break; }
        if (ends("ation")) { r("ate"); break; }
        if (ends("ator")) { r("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { r("al"); break; }
        if (ends("iveness")) { r("ive"); break; }
        if (ends("fulness")) { r("ful"); break; }
        if (ends("ousness")) { r("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { r("al"); break; }
        if (ends("iviti")) { r("ive"); break; }
        if (ends("biliti")) { r("ble"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (b_[k_]) {
      case 'e':
        if (ends("icate")) { r("ic"); break; }
        if (ends("ative")) { r(""); break; }
        if (ends("alize")) { r("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { r("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { r("ic"); break; }
        if (ends("ful")) { r(""); break; }
        break;
      case 's':
        if (ends("ness")) { r(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a':
        if (ends("al")) break;
        return;
      case 'c':
        if (ends("ance")) break;
        if (ends("ence")) break;
        return;
      case 'e':
        if (ends("er")) break;
        return;
      case 'i':
        if (ends("ic")) break;
        return;
      case 'l':
        if (ends("able")) break;
        if (ends("ible")) break;
        return;
      case 'n':
        if (ends("ant")) break;
        if (ends("ement")) break;
        if (ends("ment")) break;
        if (ends("ent")) break;
        return;
      case 'o':
        if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) break;
        if (ends("ou")) break;
        return;
      case 's':
        if (ends("ism")) break;
        return;
      case 't':
        if (ends("ate")) break;
        if (ends("iti")) break;
        return;
      case 'u':
        if (ends("ous")) break;
        return;
      case 'v':
        if (ends("ive")) break;
        return;
      case 'z':
        if (ends("ize")) break;
        return;
      default:
        return;
    }
    if (m() > 1) k_ = j_;
  }

  void step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && doublec(k_)) {
      j_ = k_;
      if (m() > 1) --k_;
    }
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string PorterStemmer::stem(std::string_view word) const {
  for (unsigned char c : word)
    if (c < 'a' || c > 'z') return std::string(word);
  return PorterState(std::string(word)).run();
}

std::shared_ptr<const Stemmer> make_stemmer(std::string_view name) {
  if (name == "porter") return std::make_shared<PorterStemmer>();
  if (name == "identity" || name == "none") return std::make_shared<IdentityStemmer>();
  throw ConfigError("unknown stemmer '" + std::string(name) + "' (expected porter|identity)");
}

const std::unordered_set<std::string>& java_reserved_words() {
  static const std::unordered_set<std::string> words = {
      "abstract", "assert",     "boolean",   "break",      "byte",      "case",
      "catch",    "char",       "class",     "const",      "continue",  "default",
      "do",       "double",     "else",      "enum",       "extends",   "final",
      "finally",  "float",      "for",       "goto",       "if",        "implements",
      "import",   "instanceof", "int",       "interface",  "long",      "native",
      "new",      "package",    "private",   "protected",  "public",    "return",
      "short",    "static",     "strictfp",  "super",      "switch",    "synchronized",
      "this",     "throw",      "throws",    "transient",  "try",       "void",
      "volatile", "while",      "true",      "false",      "null",      "var",
      "record",   "yield",      "sealed",    "permits"};
  return words;
}

const std::unordered_set<std::string>& english_stop_words() {
  static const std::unordered_set<std::string> words = {
      "a",        "about",   "above",   "after",   "again",  "against", "all",     "am",
      "an",       "and",     "any",     "are",     "as",     "at",      "be",      "because",
      "been",     "before",  "being",   "below",   "between", "both",   "but",     "by",
      "can",      "could",   "did",     "do",      "does",   "doing",   "down",    "during",
      "each",     "few",     "for",     "from",    "further", "had",    "has",     "have",
      "having",   "he",      "her",     "here",    "hers",   "herself", "him",     "himself",
      "his",      "how",     "i",       "if",      "in",     "into",    "is",      "it",
      "its",      "itself",  "just",    "me",      "more",   "most",    "my",      "myself",
      "no",       "nor",     "not",     "now",     "of",     "off",     "on",      "once",
      "only",     "or",      "other",   "ought",   "our",    "ours",    "ourselves", "out",
      "over",     "own",     "same",    "shall",   "she",    "should",  "so",      "some",
      "such",     "than",    "that",    "the",     "their",  "theirs",  "them",    "themselves",
      "then",     "there",   "these",   "they",    "this",   "those",   "through", "to",
      "too",      "under",   "until",   "up",      "very",   "was",     "we",      "were",
      "what",     "when",    "where",   "which",   "while",  "who",     "whom",    "why",
      "will",     "with",    "would",   "you",     "your",   "yours",   "yourself", "yourselves",
      "also",     "may",     "might",   "must",    "us",     "via",     "etc",     "e",
      "g",        "ie",      "eg"};
  return words;
}

TokenBag normalize_tokens(std::span<const std::string> words,
                          const std::unordered_set<std::string>& reserved,
                          const std::unordered_set<std::string>& stop,
                          const Stemmer& stemmer) {
  TokenBag bag;
  auto dropped = [&](const std::string& w) {
    return w.empty() || is_numeric(w) || reserved.count(w) || stop.count(w);
  };
  for (const auto& raw : words) {
    std::string w = to_lower(raw);
    if (dropped(w)) continue;
    // Stemming only shortens or rewrites suffixes, so the fixpoint is reached
    // in a handful of rounds.
    for (int round = 0; round < 8; ++round) {
      std::string next = stemmer.stem(w);
      if (next == w) break;
      w = std::move(next);
    }
    if (dropped(w)) continue;
    bag.add(w);
  }
  return bag;
}

TextPipeline TextPipeline::java_default() {
  TextPipeline p;
  p.reserved = java_reserved_words();
  p.stop = english_stop_words();
  p.stemmer = std::make_shared<PorterStemmer>();
  return p;
}

TokenBag TextPipeline::normalize(std::span<const std::string> words) const {
  return normalize_tokens(words, reserved, stop, *stemmer);
}

TokenBag TextPipeline::bag_of(std::string_view text) const {
  const auto words = tokenize_identifier(text);
  return normalize(words);
}

TokenBag extract_textual_features(const CodeEntity& entity, const TextPipeline& pipeline) {
  TokenBag bag;
  for (const auto& comment : entity.comments) bag.merge(pipeline.bag_of(comment));
  for (const auto& variable : entity.public_variables) bag.merge(pipeline.bag_of(variable));
  return bag;
}

}  // namespace archrec
