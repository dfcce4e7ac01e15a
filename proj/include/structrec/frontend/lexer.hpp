#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace structrec::frontend {

enum class TokenKind : std::uint8_t { Keyword, NonKeyword };

// Finer lexical class; the parser needs it, features do not.
enum class Lexeme : std::uint8_t { Word, Symbol, Identifier, Number, String, Char, Constant };

struct Token {
  TokenKind kind = TokenKind::NonKeyword;
  Lexeme lexeme = Lexeme::Identifier;
  std::string text;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool is_keyword() const { return kind == TokenKind::Keyword; }
  bool is(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
  std::size_t end() const { return offset + length; }
};

/// True for reserved words and operator/punctuation symbols of the
/// mini-language. true/false/null are literals, not keywords.
bool is_keyword_text(std::string_view text);

/// Splits source text into tokens, dropping whitespace and comments.
/// Throws LexError on a character that cannot start any token.
std::vector<Token> tokenize(std::string_view source);

}  // namespace structrec::frontend
