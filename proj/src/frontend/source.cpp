#include "structrec/frontend/source.hpp"

#include <cctype>

#include "structrec/error.hpp"
#include "structrec/frontend/lexer.hpp"
#include "structrec/frontend/parser.hpp"
#include "structrec/hash.hpp"

namespace structrec::frontend {

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::uint64_t content_hash(std::string_view text) { return fnv1a64(normalize_whitespace(text)); }

namespace {

class MemberScanner {
 public:
  explicit MemberScanner(const std::vector<Token>& toks) : toks_(toks) {}

  std::vector<MethodSpan> run() {
    while (i_ < toks_.size()) {
      if (starts_type(i_)) {
        enter_type();
      } else {
        ++i_;
      }
    }
    return std::move(out_);
  }

 private:
  bool is(std::size_t k, std::string_view s) const { return k < toks_.size() && toks_[k].is(s); }

  bool starts_type(std::size_t k) const {
    if (!(is(k, "class") || is(k, "interface") || is(k, "enum"))) return false;
    return !(k > 0 && toks_[k - 1].is("."));
  }

  // Index just past the brace matching the '{' at k.
  std::size_t skip_braces(std::size_t k) const {
    int depth = 0;
    for (; k < toks_.size(); ++k) {
      if (toks_[k].is("{")) ++depth;
      if (toks_[k].is("}") && --depth == 0) return k + 1;
    }
    return toks_.size();
  }

  // Cursor on a type keyword; consumes through the type's closing brace.
  void enter_type() {
    while (i_ < toks_.size() && !is(i_, "{")) ++i_;
    if (i_ >= toks_.size()) return;
    ++i_;
    while (i_ < toks_.size() && !is(i_, "}")) member();
    ++i_;
  }

  void member() {
    std::size_t start = i_;
    int parens = 0;
    bool saw_params = false, saw_assign = false, saw_type = false;
    std::string name;
    for (std::size_t j = i_; j < toks_.size(); ++j) {
      const Token& t = toks_[j];
      if (t.is("(")) {
        if (parens == 0 && !saw_assign && !saw_params && j > start &&
            toks_[j - 1].lexeme == Lexeme::Identifier) {
          saw_params = true;
          name = toks_[j - 1].text;
        }
        ++parens;
      } else if (t.is(")")) {
        --parens;
      } else if (parens > 0) {
        continue;
      } else if (t.is("=")) {
        saw_assign = true;
      } else if (starts_type(j)) {
        saw_type = true;
      } else if (t.is(";")) {
        i_ = j + 1;
        return;
      } else if (t.is("}")) {
        i_ = j;  // stray close of the enclosing type
        return;
      } else if (t.is("{")) {
        if (saw_type) {
          i_ = j;
          enter_type();
          return;
        }
        std::size_t end = skip_braces(j);
        if (saw_params && !saw_assign) {
          std::size_t from = toks_[start].offset;
          std::size_t to = toks_[end - 1].end();
          out_.push_back({from, to - from, name});
          i_ = end;
          return;
        }
        if (saw_assign) {
          j = end - 1;  // initializer with a class body; keep looking for ';'
          continue;
        }
        i_ = end;  // initializer block or enum constant body
        return;
      }
    }
    i_ = toks_.size();
  }

  const std::vector<Token>& toks_;
  std::size_t i_ = 0;
  std::vector<MethodSpan> out_;
};

}  // namespace

std::vector<MethodSpan> extract_methods(std::string_view file_text) {
  std::vector<Token> toks = tokenize(file_text);
  return MemberScanner(toks).run();
}

std::vector<MethodSource> methods_from_file(std::string_view file_text, const std::string& project,
                                            const std::string& path, std::size_t* failures) {
  std::vector<MethodSource> out;
  for (const MethodSpan& span : extract_methods(file_text)) {
    MethodSource m;
    m.project = project;
    m.path = path;
    m.name = span.name;
    m.text = std::string(file_text.substr(span.offset, span.length));
    m.file_offset = span.offset;
    try {
      std::vector<Token> toks = tokenize(m.text);
      ParsedMethod pm = parse_method_declaration(toks);
      m.body_offset = pm.body_offset;
    } catch (const Error&) {
      if (failures) ++*failures;
      continue;
    }
    m.hash = content_hash(m.body());
    out.push_back(std::move(m));
  }
  return out;
}

AnnotatedTree load_method(const MethodSource& m) {
  if (m.kind == SourceKind::Tree) return import_tree(m.text);
  std::vector<Token> toks = tokenize(m.text);
  AnnotatedTree out;
  out.tree = parse_method_declaration(toks).body;
  out.vars = classify_variables(out.tree);
  return out;
}

AnnotatedTree parse_query(std::string_view text) {
  std::vector<Token> toks = tokenize(text);
  AnnotatedTree out;
  out.tree = parse_snippet(toks);
  out.vars = classify_variables(out.tree);
  return out;
}

}  // namespace structrec::frontend
