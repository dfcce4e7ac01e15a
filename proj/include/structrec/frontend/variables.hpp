#pragma once

#include <cstdint>
#include <vector>

#include "structrec/frontend/tree.hpp"

namespace structrec::frontend {

enum class VarClass : std::uint8_t { Local, Global, NonVariable };

inline constexpr std::int64_t kNoBinding = -1;

/// Per-leaf variable classes, indexed by leaf ordinal.
struct VariableAnnotation {
  std::vector<VarClass> classes;
  // Binding id for locals (dense from 0 in order of first occurrence);
  // kNoBinding otherwise.
  std::vector<std::int64_t> bindings;

  bool is_local(std::size_t leaf) const { return classes[leaf] == VarClass::Local; }
  bool operator==(const VariableAnnotation&) const = default;
};

/// Resolves identifiers with lexical scoping. Trees without parser roles
/// (imported or hand-built) fall back to the position rule: right of "." or
/// left of "(" is non-variable, other identifiers are global.
VariableAnnotation classify_variables(const SimplifiedParseTree& tree);

/// Leaf ordinals of the previous / next use of the same local, or kNoNode.
struct UseChains {
  std::vector<std::uint32_t> prev;
  std::vector<std::uint32_t> next;
};
UseChains use_chains(const VariableAnnotation& vars);

}  // namespace structrec::frontend
