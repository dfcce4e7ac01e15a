#include "structrec/frontend/variables.hpp"

#include <cctype>
#include <string>
#include <unordered_map>

namespace structrec::frontend {

namespace {

bool looks_like_identifier(const std::string& text) {
  if (text.empty() || text == "true" || text == "false" || text == "null") return false;
  unsigned char c = static_cast<unsigned char>(text.front());
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

// Keyword text of the sibling element adjacent to a leaf, or empty.
std::string adjacent_keyword(const SimplifiedParseTree& t, std::uint32_t id, int dir) {
  const Node& n = t.node(id);
  if (n.parent == kNoNode) return {};
  const auto& kids = t.node(n.parent).children;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i] != id) continue;
    long j = static_cast<long>(i) + dir;
    if (j < 0 || j >= static_cast<long>(kids.size())) return {};
    const Node& s = t.node(kids[static_cast<std::size_t>(j)]);
    return s.kind == ElementKind::Keyword ? s.text : std::string();
  }
  return {};
}

VariableAnnotation by_position(const SimplifiedParseTree& tree) {
  VariableAnnotation out;
  const auto& leaves = tree.leaves();
  out.classes.assign(leaves.size(), VarClass::NonVariable);
  out.bindings.assign(leaves.size(), kNoBinding);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    std::uint32_t id = leaves[i];
    if (!looks_like_identifier(tree.node(id).text)) continue;
    if (adjacent_keyword(tree, id, -1) == "." || adjacent_keyword(tree, id, +1) == "(") continue;
    out.classes[i] = VarClass::Global;
  }
  return out;
}

}  // namespace

VariableAnnotation classify_variables(const SimplifiedParseTree& tree) {
  if (!tree.has_roles() || tree.scope_parent.empty()) return by_position(tree);

  const auto& leaves = tree.leaves();
  VariableAnnotation out;
  out.classes.assign(leaves.size(), VarClass::NonVariable);
  out.bindings.assign(leaves.size(), kNoBinding);

  std::vector<std::unordered_map<std::string, std::int64_t>> scopes(tree.scope_parent.size());
  std::int64_t next_binding = 0;
  // Parameters get their binding id at first use, keeping ids dense in order
  // of first occurrence.
  for (const auto& p : tree.outer_locals) scopes[0].try_emplace(p, kNoBinding);

  auto lookup = [&](std::uint32_t scope, const std::string& name) -> std::int64_t* {
    while (true) {
      auto it = scopes[scope].find(name);
      if (it != scopes[scope].end()) return &it->second;
      std::uint32_t parent = tree.scope_parent[scope];
      if (parent == scope) return nullptr;
      scope = parent;
    }
  };

  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const std::string& name = tree.node(leaves[i]).text;
    std::uint32_t scope = tree.scopes[i];
    switch (tree.roles[i]) {
      case LeafRole::Member:
      case LeafRole::Literal:
        break;
      case LeafRole::Type:
        out.classes[i] = VarClass::Global;
        break;
      case LeafRole::Declaration:
        out.classes[i] = VarClass::Local;
        out.bindings[i] = next_binding;
        scopes[scope][name] = next_binding++;
        break;
      case LeafRole::Use: {
        std::int64_t* b = lookup(scope, name);
        if (!b) {
          out.classes[i] = VarClass::Global;
          break;
        }
        if (*b == kNoBinding) *b = next_binding++;
        out.classes[i] = VarClass::Local;
        out.bindings[i] = *b;
        break;
      }
    }
  }
  return out;
}

UseChains use_chains(const VariableAnnotation& vars) {
  std::size_t n = vars.classes.size();
  UseChains c{std::vector<std::uint32_t>(n, kNoNode), std::vector<std::uint32_t>(n, kNoNode)};
  std::unordered_map<std::int64_t, std::uint32_t> last;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (vars.classes[i] != VarClass::Local || vars.bindings[i] == kNoBinding) continue;
    auto [it, fresh] = last.try_emplace(vars.bindings[i], i);
    if (!fresh) {
      c.prev[i] = it->second;
      c.next[it->second] = i;
      it->second = i;
    }
  }
  return c;
}

}  // namespace structrec::frontend
