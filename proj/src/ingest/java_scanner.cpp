#include "archrec/ingest/java_scanner.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "archrec/core/error.hpp"
#include "archrec/ingest/text.hpp"

namespace archrec {

namespace {

enum class Tok { Ident, Symbol, Literal };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
  int line;
};

struct Comment {
  std::string text;
  std::size_t offset;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

std::string clean_comment(std::string_view raw) {
  std::string out;
  std::istringstream lines{std::string(raw)};
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::string_view v(line);
    v.remove_prefix(b);
    if (v.starts_with("/**")) v.remove_prefix(3);
    else if (v.starts_with("/*") || v.starts_with("//")) v.remove_prefix(2);
    else if (v.starts_with("*") && !v.starts_with("*/")) v.remove_prefix(1);
    if (v.ends_with("*/")) v.remove_suffix(2);
    while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
    if (v.empty()) continue;
    if (!out.empty()) out += ' ';
    out += v;
  }
  const auto e = out.find_last_not_of(' ');
  out.erase(e == std::string::npos ? 0 : e + 1);
  return out;
}

struct Lexed {
  std::vector<Token> tokens;
  std::vector<Comment> comments;
};

Lexed lex(std::string_view s, const std::string& path) {
  Lexed out;
  int line = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& what, int at_line) {
    throw IngestError(path + ":" + std::to_string(at_line) + ": " + what);
  };
  auto advance_to = [&](std::size_t j) {
    for (std::size_t k = i; k < j; ++k)
      if (s[k] == '\n') ++line;
    i = j;
  };
  while (i < s.size()) {
    const unsigned char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(c)) {
      ++i;
    } else if (s.compare(i, 2, "//") == 0) {
      std::size_t j = s.find('\n', i);
      if (j == std::string_view::npos) j = s.size();
      out.comments.push_back({clean_comment(s.substr(i, j - i)), i});
      i = j;
    } else if (s.compare(i, 2, "/*") == 0) {
      const std::size_t j = s.find("*/", i + 2);
      if (j == std::string_view::npos) fail("unterminated comment", line);
      out.comments.push_back({clean_comment(s.substr(i, j + 2 - i)), i});
      advance_to(j + 2);
    } else if (s.compare(i, 3, "\"\"\"") == 0) {
      const int start_line = line;
      const std::size_t j = s.find("\"\"\"", i + 3);
      if (j == std::string_view::npos) fail("unterminated text block", start_line);
      out.tokens.push_back({Tok::Literal, "\"\"", i, start_line});
      advance_to(j + 3);
    } else if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != c) {
        if (s[j] == '\\') ++j;
        if (j < s.size() && s[j] == '\n') fail("unterminated literal", line);
        ++j;
      }
      if (j >= s.size()) fail("unterminated literal", line);
      out.tokens.push_back({Tok::Literal, std::string(1, static_cast<char>(c)), i, line});
      i = j + 1;
    } else if (std::isdigit(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                              (s[j] == '.' && j + 1 < s.size() &&
                               std::isdigit(static_cast<unsigned char>(s[j + 1])))))
        ++j;
      out.tokens.push_back({Tok::Literal, std::string(s.substr(i, j - i)), i, line});
      i = j;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && ident_part(static_cast<unsigned char>(s[j]))) ++j;
      out.tokens.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i, line});
      i = j;
    } else {
      out.tokens.push_back({Tok::Symbol, std::string(1, static_cast<char>(c)), i, line});
      ++i;
    }
  }
  return out;
}

const std::unordered_set<std::string>& modifiers() {
  static const std::unordered_set<std::string> m = {
      "public",   "protected",    "private",   "static",   "final",  "abstract",
      "default",  "synchronized", "native",    "transient", "volatile", "strictfp",
      "sealed",   "non"};
  return m;
}

struct PendingBody {
  std::size_t begin;
  std::size_t end;
  std::map<std::string, std::string> params;
};

class Parser {
 public:
  Parser(Lexed lexed, std::string path) : t_(std::move(lexed.tokens)), comments_(std::move(lexed.comments)), path_(std::move(path)) {}

  ScannedSource run() {
    while (pos_ < t_.size()) {
      if (ident("package")) {
        ++pos_;
        package_ = read_qualified();
        skip_past(";");
      } else if (ident("import")) {
        skip_past(";");
      } else if (type_keyword_at(pos_)) {
        parse_type();
      } else {
        ++pos_;
      }
    }
    attribute_comments();
    return std::move(out_);
  }

 private:
  bool at_end(std::size_t p) const { return p >= t_.size(); }
  bool sym(std::string_view s, std::size_t p) const {
    return !at_end(p) && t_[p].kind == Tok::Symbol && t_[p].text == s;
  }
  bool sym(std::string_view s) const { return sym(s, pos_); }
  bool ident(std::string_view s, std::size_t p) const {
    return !at_end(p) && t_[p].kind == Tok::Ident && t_[p].text == s;
  }
  bool ident(std::string_view s) const { return ident(s, pos_); }
  bool is_ident(std::size_t p) const { return !at_end(p) && t_[p].kind == Tok::Ident; }

  [[noreturn]] void fail(const std::string& what) const {
    const int line = at_end(pos_) ? (t_.empty() ? 1 : t_.back().line) : t_[pos_].line;
    throw IngestError(path_ + ":" + std::to_string(line) + ": " + what);
  }

  std::string read_qualified() {
    std::string name;
    while (is_ident(pos_)) {
      name += t_[pos_++].text;
      if (sym(".") && is_ident(pos_ + 1)) {
        name += '.';
        ++pos_;
      } else {
        break;
      }
    }
    return name;
  }

  void skip_past(std::string_view s) {
    while (!at_end(pos_) && !sym(s)) ++pos_;
    if (!at_end(pos_)) ++pos_;
  }

  // Index one past the bracket matching the opener at `p`.
  std::size_t match(std::size_t p) const {
    const std::string open = t_[p].text;
    const std::string close = open == "(" ? ")" : open == "{" ? "}" : open == "[" ? "]" : ">";
    int depth = 0;
    for (std::size_t q = p; q < t_.size(); ++q) {
      if (t_[q].kind != Tok::Symbol) continue;
      if (t_[q].text == open) ++depth;
      else if (t_[q].text == close && --depth == 0) return q + 1;
    }
    throw IngestError(path_ + ":" + std::to_string(t_[p].line) + ": unbalanced '" + open + "'");
  }

  // Generic argument list starting at '<'; returns one past the closing '>' or
  // `p` when the tokens cannot be a type argument list.
  std::size_t skip_generics(std::size_t p) const {
    int depth = 0;
    for (std::size_t q = p; q < t_.size(); ++q) {
      const Token& tok = t_[q];
      if (tok.kind == Tok::Ident) continue;
      if (tok.kind != Tok::Symbol) return p;
      if (tok.text == "<") ++depth;
      else if (tok.text == ">") {
        if (--depth == 0) return q + 1;
      } else if (tok.text != "," && tok.text != "." && tok.text != "?" && tok.text != "[" &&
                 tok.text != "]" && tok.text != "&" && tok.text != "@") {
        return p;
      }
    }
    return p;
  }

  bool type_keyword_at(std::size_t p) const {
    if (at_end(p) || t_[p].kind != Tok::Ident) return false;
    if (p > 0 && sym(".", p - 1)) return false;
    const std::string& w = t_[p].text;
    if (w == "class" || w == "interface" || w == "enum") return is_ident(p + 1);
    if (w == "record") return is_ident(p + 1) && (sym("(", p + 2) || sym("<", p + 2));
    return false;
  }

  void parse_type() {
    const bool annotation_type = pos_ > 0 && sym("@", pos_ - 1);
    const std::size_t header = pos_;
    const std::string kind = t_[pos_].text;
    const std::string name = t_[pos_ + 1].text;
    std::string declaration;
    while (!at_end(pos_) && !sym("{")) {
      if (sym("(")) {
        pos_ = match(pos_);
        continue;
      }
      if (!declaration.empty()) declaration += ' ';
      declaration += t_[pos_].text;
      ++pos_;
    }
    if (at_end(pos_)) fail("type '" + name + "' has no body");
    const std::size_t body_open = pos_;
    const std::size_t body_end = match(body_open);
    if (annotation_type) {
      pos_ = body_end;
      return;
    }

    CodeEntity e;
    e.name = name;
    e.package = package_;
    e.package_path = extract_package_path(package_);
    e.inheritance_raw = extract_inheritance_list(declaration);
    e.source_path = path_;
    e.source_line = t_[header].line;
    const std::size_t index = out_.entities.size();
    out_.entities.push_back(std::move(e));
    spans_.push_back({index, t_[header].offset, t_[body_end - 1].offset});

    pos_ = body_open + 1;
    parse_body(kind, index, body_end - 1);
    pos_ = body_end;
  }

  void parse_body(const std::string& kind, std::size_t index, std::size_t close) {
    const bool is_interface = kind == "interface";
    std::map<std::string, std::string> fields;
    std::vector<PendingBody> bodies;

    if (kind == "enum") {
      while (pos_ < close && !sym(";")) {
        if (sym("(") || sym("{")) pos_ = match(pos_);
        else ++pos_;
      }
    }

    while (pos_ < close) {
      if (sym(";")) {
        ++pos_;
        continue;
      }
      bool is_public = false;
      bool is_private = false;
      while (pos_ < close) {
        if (sym("@") && !ident("interface", pos_ + 1)) {
          ++pos_;
          read_qualified();
          if (sym("(")) pos_ = match(pos_);
          continue;
        }
        if (is_ident(pos_) && modifiers().count(t_[pos_].text)) {
          if (t_[pos_].text == "non") {  // non-sealed
            pos_ += sym("-", pos_ + 1) ? 3 : 1;
            continue;
          }
          is_public |= t_[pos_].text == "public";
          is_private |= t_[pos_].text == "private";
          ++pos_;
          continue;
        }
        break;
      }
      if (pos_ >= close) break;
      if (sym("{")) {
        const std::size_t end = match(pos_);
        bodies.push_back({pos_ + 1, end - 1, {}});
        pos_ = end;
        continue;
      }
      if (sym("@") && ident("interface", pos_ + 1)) {
        ++pos_;
        parse_type();
        continue;
      }
      if (type_keyword_at(pos_)) {
        parse_type();
        continue;
      }
      if (sym("<")) {
        const std::size_t after = skip_generics(pos_);
        pos_ = after == pos_ ? pos_ + 1 : after;
      }

      std::vector<std::size_t> decl;
      while (pos_ < close && !sym("(") && !sym("=") && !sym(";") && !sym(",") && !sym("{")) {
        if (sym("<")) {
          const std::size_t after = skip_generics(pos_);
          if (after != pos_) {
            for (std::size_t q = pos_; q < after; ++q) decl.push_back(q);
            pos_ = after;
            continue;
          }
        }
        decl.push_back(pos_++);
      }
      if (pos_ >= close || decl.empty()) {
        if (pos_ < close && sym("{")) pos_ = match(pos_);
        else ++pos_;
        continue;
      }

      const std::string member = t_[decl.back()].text;
      const std::string type = join(decl, 0, decl.size() - 1);
      if (sym("(")) {
        const std::size_t params_end = match(pos_);
        const auto params = parse_params(pos_ + 1, params_end - 1);
        pos_ = params_end;
        while (pos_ < close && !sym("{") && !sym(";")) {
          if (sym("(")) pos_ = match(pos_);
          else ++pos_;
        }
        std::map<std::string, std::string> param_types;
        MethodSignature sig;
        sig.name = member;
        sig.return_type = type;
        for (const auto& [pname, ptype, pbase] : params) {
          sig.param_types.push_back(ptype);
          param_types[pname] = pbase;
        }
        if (sym("{")) {
          const std::size_t end = match(pos_);
          bodies.push_back({pos_ + 1, end - 1, std::move(param_types)});
          pos_ = end;
        } else if (sym(";")) {
          ++pos_;
        }
        const bool constructor = type.empty();
        if (!constructor && (is_public || (is_interface && !is_private)))
          out_.entities[index].public_methods.push_back(std::move(sig));
        continue;
      }

      // Field declaration, possibly with several declarators.
      const std::string base = base_type(decl, 0, decl.size() - 1);
      auto record_field = [&](const std::string& fname) {
        fields[fname] = base;
        if (is_public || is_interface) out_.entities[index].public_variables.push_back(fname);
      };
      record_field(member);
      while (pos_ < close) {
        if (sym(";")) {
          ++pos_;
          break;
        }
        if (sym("=")) {
          const std::size_t init = pos_ + 1;
          ++pos_;
          while (pos_ < close && !sym(",") && !sym(";")) {
            if (sym("(") || sym("{") || sym("[")) pos_ = match(pos_);
            else ++pos_;
          }
          bodies.push_back({init, pos_, {}});
          continue;
        }
        if (sym(",")) {
          ++pos_;
          if (is_ident(pos_)) record_field(t_[pos_++].text);
          continue;
        }
        ++pos_;
      }
    }

    const std::string caller = out_.entities[index].qualified_name();
    for (const auto& body : bodies) scan_calls(body, fields, caller);
  }

  struct Param {
    std::string name;
    std::string type;
    std::string base;
  };

  std::vector<Param> parse_params(std::size_t begin, std::size_t end) const {
    std::vector<Param> out;
    std::vector<std::size_t> current;
    auto flush = [&] {
      std::vector<std::size_t> kept;
      for (std::size_t k = 0; k < current.size(); ++k) {
        const std::size_t q = current[k];
        if (sym("@", q)) {
          ++k;  // annotation name
          while (k + 2 < current.size() && sym(".", current[k + 1])) k += 2;
          if (k + 1 < current.size() && sym("(", current[k + 1])) {
            const std::size_t stop = match(current[k + 1]);
            while (k + 1 < current.size() && current[k + 1] < stop) ++k;
          }
          continue;
        }
        if (ident("final", q)) continue;
        kept.push_back(q);
      }
      current.clear();
      if (kept.empty()) return;
      Param p;
      p.name = t_[kept.back()].text;
      p.type = join(kept, 0, kept.size() - 1);
      p.base = base_type(kept, 0, kept.size() - 1);
      out.push_back(std::move(p));
    };
    int depth = 0;
    for (std::size_t q = begin; q < end; ++q) {
      if (t_[q].kind == Tok::Symbol) {
        const std::string& s = t_[q].text;
        if (s == "<" || s == "(") ++depth;
        if (s == ">" || s == ")") --depth;
        if (s == "," && depth == 0) {
          flush();
          continue;
        }
      }
      current.push_back(q);
    }
    flush();
    return out;
  }

  std::string join(const std::vector<std::size_t>& idx, std::size_t from, std::size_t to) const {
    std::string s;
    for (std::size_t k = from; k < to; ++k) s += t_[idx[k]].text;
    return s;
  }

  // Outermost simple type name, e.g. "java.util.Map<K,V>[]" -> "Map".
  std::string base_type(const std::vector<std::size_t>& idx, std::size_t from, std::size_t to) const {
    std::string last;
    for (std::size_t k = from; k < to; ++k) {
      const Token& tok = t_[idx[k]];
      if (tok.kind == Tok::Symbol && tok.text == "<") break;
      if (tok.kind == Tok::Ident) last = tok.text;
    }
    return last;
  }

  int count_args(std::size_t open) const {
    const std::size_t close = match(open) - 1;
    if (close == open + 1) return 0;
    int args = 1;
    int depth = 0;
    for (std::size_t q = open + 1; q < close; ++q) {
      if (t_[q].kind != Tok::Symbol) continue;
      const std::string& s = t_[q].text;
      if (s == "(" || s == "{" || s == "[") ++depth;
      else if (s == ")" || s == "}" || s == "]") --depth;
      else if (s == "," && depth == 0) ++args;
    }
    return args;
  }

  void scan_calls(const PendingBody& body, const std::map<std::string, std::string>& fields,
                  const std::string& caller) {
    const auto& reserved = java_reserved_words();
    std::map<std::string, std::string> locals;
    for (std::size_t i = body.begin; i < body.end; ++i) {
      if (!is_ident(i)) continue;
      const std::string& word = t_[i].text;

      // Local declaration: Type [<...>] [[]]* name (= ; , : ))
      if (!reserved.count(word) || word == "var") {
        std::size_t j = i + 1;
        if (sym("<", j)) j = skip_generics(j);
        while (sym("[", j) && sym("]", j + 1)) j += 2;
        if (j > i && is_ident(j) && !reserved.count(t_[j].text) &&
            (sym("=", j + 1) || sym(";", j + 1) || sym(",", j + 1) || sym(":", j + 1) ||
             sym(")", j + 1))) {
          std::string type = word;
          if (word == "var" && sym("=", j + 1) && ident("new", j + 2) && is_ident(j + 3))
            type = t_[j + 3].text;
          if (type != "var") locals[t_[j].text] = type;
        }
      }

      const bool chain_start = i == 0 || !sym(".", i - 1);
      if (!chain_start) continue;
      std::size_t recv = i;
      bool via_this = false;
      if (word == "this" && sym(".", i + 1) && is_ident(i + 2)) {
        recv = i + 2;
        via_this = true;
      }
      if (!(sym(".", recv + 1) && is_ident(recv + 2) && sym("(", recv + 3))) continue;
      const std::string& name = t_[recv].text;
      std::string type;
      if (via_this) {
        if (auto f = fields.find(name); f != fields.end()) type = f->second;
      } else if (auto l = locals.find(name); l != locals.end()) {
        type = l->second;
      } else if (auto p = body.params.find(name); p != body.params.end()) {
        type = p->second;
      } else if (auto f = fields.find(name); f != fields.end()) {
        type = f->second;
      } else if (std::isupper(static_cast<unsigned char>(name[0]))) {
        type = name;
      }
      if (type.empty()) continue;
      SourceCall call;
      call.caller = caller;
      call.caller_package = package_;
      call.receiver_type = type;
      call.method = t_[recv + 2].text;
      call.arity = count_args(recv + 3);
      call.source_path = path_;
      call.line = t_[recv + 2].line;
      out_.calls.push_back(std::move(call));
    }
  }

  void attribute_comments() {
    if (out_.entities.empty()) return;
    for (const auto& c : comments_) {
      if (c.text.empty()) continue;
      const Span* inner = nullptr;
      const Span* next = nullptr;
      for (const auto& s : spans_) {
        if (s.begin <= c.offset && c.offset <= s.end) {
          if (!inner || s.begin > inner->begin) inner = &s;
        } else if (s.begin > c.offset && (!next || s.begin < next->begin)) {
          next = &s;
        }
      }
      const Span* target = inner ? inner : next;
      const std::size_t index = target ? target->index : spans_.back().index;
      out_.entities[index].comments.push_back(c.text);
    }
  }

  struct Span {
    std::size_t index;
    std::size_t begin;
    std::size_t end;
  };

  std::vector<Token> t_;
  std::vector<Comment> comments_;
  std::string path_;
  std::string package_;
  std::size_t pos_ = 0;
  std::vector<Span> spans_;
  ScannedSource out_;
};

}  // namespace

ScannedSource scan_java(std::string_view source, const std::string& path) {
  return Parser(lex(source, path), path).run();
}

ScannedSource scan_java_tree(const std::vector<std::filesystem::path>& roots) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& root : roots) {
    if (fs::is_regular_file(root)) {
      files.push_back(root);
      continue;
    }
    if (!fs::is_directory(root)) throw IngestError(root.string() + ": no such file or directory");
    for (const auto& entry : fs::recursive_directory_iterator(root))
      if (entry.is_regular_file() && entry.path().extension() == ".java") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  if (files.empty()) throw IngestError("no .java files found under the given sources");

  std::vector<ScannedSource> parts(files.size());
  std::vector<std::exception_ptr> errors(files.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t f = 0; f < files.size(); ++f) {
    try {
      std::ifstream in(files[f], std::ios::binary);
      if (!in) throw IngestError(files[f].string() + ": cannot open");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      parts[f] = scan_java(buffer.str(), files[f].generic_string());
    } catch (...) {
      errors[f] = std::current_exception();
    }
  }
  for (const auto& error : errors)
    if (error) std::rethrow_exception(error);

  ScannedSource out;
  for (auto& part : parts) {
    std::move(part.entities.begin(), part.entities.end(), std::back_inserter(out.entities));
    std::move(part.calls.begin(), part.calls.end(), std::back_inserter(out.calls));
  }
  return out;
}

}  // namespace archrec
