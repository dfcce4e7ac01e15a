#pragma once

#include <span>
#include <string>
#include <vector>

#include "structrec/frontend/lexer.hpp"
#include "structrec/frontend/tree.hpp"

namespace structrec::frontend {

/// Parses a brace-delimited method body. `params` are bound as locals before
/// the first token.
SimplifiedParseTree parse_method_body(std::span<const Token> tokens,
                                      std::vector<std::string> params = {});

struct ParsedMethod {
  std::string name;
  std::vector<std::string> params;
  SimplifiedParseTree body;
  std::size_t body_offset = 0;  // source offset of the body's '{'
};

/// Parses `[modifiers] [<T>] Type name(params) [throws X] { ... }` (or a
/// constructor). The returned tree is the body; parameters become outer locals.
ParsedMethod parse_method_declaration(std::span<const Token> tokens);

/// Parses a query fragment: a statement sequence (a single statement is its
/// own root, several are collected under one list), else a lone expression,
/// else a whole method declaration. In statement and expression readings a
/// try block without handlers and a do block without its condition
/// are accepted. Throws the statement-mode ParseError if
/// every reading fails.
SimplifiedParseTree parse_snippet(std::span<const Token> tokens);

/// The tree for a method body or statement block; same as parse_snippet.
inline SimplifiedParseTree parse_method(std::span<const Token> tokens) {
  return parse_snippet(tokens);
}

}  // namespace structrec::frontend
