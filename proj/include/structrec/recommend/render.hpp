#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "structrec/frontend/tree.hpp"

namespace structrec::recommend {

enum class Highlight : std::uint8_t {
  None,
  LineMarker,  // "+ " in front of lines holding extra tokens, "  " elsewhere
  Ansi,        // extra tokens in bold green
};

struct RenderOptions {
  bool placeholders = false;
  Highlight highlight = Highlight::None;
  int indent_width = 2;
};

struct Rendered {
  std::string text;
  std::vector<std::uint32_t> extra_lines;                       // 1-based, ascending
  std::vector<std::pair<std::size_t, std::size_t>> extra_spans;  // (offset, length) in text
};

/// Pretty-prints the retained part of `tree`. `keep` marks retained nodes
/// (empty means the whole tree); `extra` flags leaves (by ordinal) that did
/// not match the query. A tree node is extra when all its retained leaves
/// are; keywords follow their parent. Spacing between tokens that were
/// adjacent in the source follows the source; line breaks and indentation
/// follow braces and semicolons. With placeholders, dropped statements show
/// as "// your code..." and other dropped elements as "...".
Rendered render(const frontend::SimplifiedParseTree& tree, const std::vector<std::uint8_t>& keep,
                const std::vector<std::uint8_t>& extra, const RenderOptions& options = {});

}  // namespace structrec::recommend
