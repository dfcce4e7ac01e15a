#include "structrec/frontend/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <unordered_set>

#include "structrec/error.hpp"

namespace structrec::frontend {

namespace {

const std::unordered_set<std::string_view>& reserved_words() {
  static const std::unordered_set<std::string_view> words = {
      "abstract", "assert",     "boolean",   "break",      "byte",     "case",
      "catch",    "char",       "class",     "const",      "continue", "default",
      "do",       "double",     "else",      "enum",       "extends",  "final",
      "finally",  "float",      "for",       "goto",       "if",       "implements",
      "import",   "instanceof", "int",       "interface",  "long",     "native",
      "new",      "package",    "private",   "protected",  "public",   "return",
      "short",    "static",     "strictfp",  "super",      "switch",   "synchronized",
      "this",     "throw",      "throws",    "transient",  "try",      "void",
      "volatile", "while"};
  return words;
}

// Longest first so that maximal munch is a linear scan. ">>" and friends are
// deliberately absent: the parser assembles shifts from adjacent '>' tokens so
// that generic closers like "List<List<T>>" need no re-lexing.
constexpr std::array<std::string_view, 44> kSymbols = {
    "...", "<<=", "->", "::", "==", "!=", "<=", ">=", "&&", "||", "++",
    "--",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", "(",
    ")",   "{",   "}",  "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",
    ">",   "!",   "~",  "?",  ":",  "+",  "-",  "*",  "/",  "&",  "|"};

constexpr std::array<std::string_view, 2> kExtraSymbols = {"^", "%"};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; }
bool ident_part(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; }

}  // namespace

bool is_keyword_text(std::string_view text) {
  if (reserved_words().count(text)) return true;
  for (auto s : kSymbols)
    if (s == text) return true;
  for (auto s : kExtraSymbols)
    if (s == text) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto push = [&](TokenKind kind, Lexeme lex, std::size_t start, std::size_t end) {
    out.push_back(Token{kind, lex, std::string(src.substr(start, end - start)), start,
                        end - start});
  };

  while (i < n) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      std::size_t close = src.find("*/", i + 2);
      if (close == std::string_view::npos) throw LexError("unterminated block comment", i);
      i = close + 2;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < n && ident_part(static_cast<unsigned char>(src[i]))) ++i;
      auto word = src.substr(start, i - start);
      if (reserved_words().count(word))
        push(TokenKind::Keyword, Lexeme::Word, start, i);
      else if (word == "true" || word == "false" || word == "null")
        push(TokenKind::NonKeyword, Lexeme::Constant, start, i);
      else
        push(TokenKind::NonKeyword, Lexeme::Identifier, start, i);
      continue;
    }
    if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      if (c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X')) {
        i += 2;
        while (i < n && (std::isxdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
      } else {
        while (i < n && (std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
        if (i < n && src[i] == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
          ++i;
          while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        } else if (i < n && src[i] == '.' && !(i + 1 < n && ident_start(static_cast<unsigned char>(src[i + 1])))) {
          ++i;  // "1." is a double literal, "1.f" is not handled as such
        }
        if (i < n && (src[i] == 'e' || src[i] == 'E')) {
          std::size_t j = i + 1;
          if (j < n && (src[j] == '+' || src[j] == '-')) ++j;
          if (j < n && std::isdigit(static_cast<unsigned char>(src[j]))) {
            i = j;
            while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
          }
        }
      }
      if (i < n && std::strchr("lLfFdD", src[i]) != nullptr) ++i;
      if (i < n && ident_part(static_cast<unsigned char>(src[i])))
        throw LexError("malformed number", start);
      push(TokenKind::NonKeyword, Lexeme::Number, start, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      const char quote = static_cast<char>(c);
      ++i;
      while (i < n && src[i] != quote) {
        if (src[i] == '\n') throw LexError("unterminated literal", start);
        if (src[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) throw LexError("unterminated literal", start);
      ++i;
      push(TokenKind::NonKeyword, quote == '"' ? Lexeme::String : Lexeme::Char, start, i);
      continue;
    }
    bool matched = false;
    auto try_symbols = [&](auto& table) {
      for (auto sym : table) {
        if (src.substr(i, sym.size()) == sym) {
          push(TokenKind::Keyword, Lexeme::Symbol, i, i + sym.size());
          i += sym.size();
          return true;
        }
      }
      return false;
    };
    matched = try_symbols(kSymbols) || try_symbols(kExtraSymbols);
    if (!matched) throw LexError(std::string("unexpected character '") + src[i] + "'", i);
  }
  return out;
}

}  // namespace structrec::frontend
