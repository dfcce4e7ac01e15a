#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "structrec/frontend/interchange.hpp"

namespace structrec::frontend {

enum class SourceKind : std::uint8_t { Code, Tree };

struct MethodSource {
  std::string project;
  std::string path;  // relative to the corpus root
  std::string name;
  // Code: the method declaration text. Tree: the interchange document.
  std::string text;
  std::size_t body_offset = 0;  // offset of the body's '{' inside text
  std::size_t file_offset = 0;  // offset of text inside its file
  std::uint64_t hash = 0;       // content_hash of the body
  SourceKind kind = SourceKind::Code;

  std::string_view body() const { return std::string_view(text).substr(body_offset); }
};

/// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);
std::uint64_t content_hash(std::string_view text);

struct MethodSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  std::string name;
};

/// Finds method declarations with bodies in class-like declarations,
/// including nested types. Lenient: unbalanced input yields what was found
/// so far. Throws LexError if the file does not tokenize.
std::vector<MethodSpan> extract_methods(std::string_view file_text);

/// Parses every extracted method. Methods that fail to parse are counted in
/// `failures` and skipped.
std::vector<MethodSource> methods_from_file(std::string_view file_text, const std::string& project,
                                            const std::string& path, std::size_t* failures);

/// Tree and variable annotation of a stored method.
AnnotatedTree load_method(const MethodSource& m);

/// Annotated tree of a query given as source: a statement sequence, an
/// expression, or a whole method declaration.
AnnotatedTree parse_query(std::string_view text);

}  // namespace structrec::frontend
