#pragma once

#include <string>
#include <string_view>

#include "structrec/frontend/tree.hpp"
#include "structrec/frontend/variables.hpp"

namespace structrec::frontend {

struct AnnotatedTree {
  SimplifiedParseTree tree;
  VariableAnnotation vars;
};

/// Serializes one tree as a JSON document. Node objects:
///   {"kind":"keyword","text":...}
///   {"kind":"token","text":...,"var":"local"|"global"|null,"binding":int|null}
///   {"kind":"tree","children":[...]}
/// The empty tree is the document `null`. Keys are emitted sorted, without
/// whitespace, so equal trees give equal bytes.
std::string export_tree(const SimplifiedParseTree& tree, const VariableAnnotation& vars);

/// Inverse of export_tree. Throws SchemaError naming the offending field.
AnnotatedTree import_tree(std::string_view document);

}  // namespace structrec::frontend
