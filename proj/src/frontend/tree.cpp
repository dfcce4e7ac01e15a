#include "structrec/frontend/tree.hpp"

#include <stdexcept>
#include <utility>

namespace structrec::frontend {

std::uint32_t SimplifiedParseTree::add_token(ElementKind kind, std::string text,
                                             std::size_t offset, std::size_t length) {
  Node n;
  n.kind = kind;
  n.text = std::move(text);
  n.offset = offset;
  n.length = length;
  nodes_.push_back(std::move(n));
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t SimplifiedParseTree::add_list(std::vector<std::uint32_t> elements) {
  if (elements.empty()) throw std::logic_error("simplified parse tree list must be non-empty");
  if (elements.size() == 1) return elements.front();
  Node n;
  n.kind = ElementKind::Tree;
  n.children = std::move(elements);
  nodes_.push_back(std::move(n));
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

void SimplifiedParseTree::finalize(std::uint32_t root) {
  root_ = root;
  leaves_.clear();
  leaf_index_.assign(nodes_.size(), kNoNode);
  labels_.assign(nodes_.size(), std::string());
  leaf_first_.assign(nodes_.size(), 0);
  leaf_end_.assign(nodes_.size(), 0);
  if (root_ == kNoNode) return;

  nodes_[root_].parent = kNoNode;
  nodes_[root_].slot = 0;
  // Iterative pre-order; children pushed in reverse keep source order.
  std::vector<std::uint32_t> stack{root_};
  std::vector<std::uint32_t> preorder;
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    preorder.push_back(id);
    Node& n = nodes_[id];
    leaf_first_[id] = static_cast<std::uint32_t>(leaves_.size());
    if (n.kind == ElementKind::Token) {
      leaf_index_[id] = static_cast<std::uint32_t>(leaves_.size());
      leaves_.push_back(id);
      continue;
    }
    if (n.kind == ElementKind::Keyword) continue;
    std::string label;
    std::uint32_t slot = 0;
    for (std::uint32_t c : n.children) {
      Node& child = nodes_[c];
      child.parent = id;
      if (child.kind == ElementKind::Keyword) {
        child.slot = 0;
        label += child.text;
      } else {
        child.slot = ++slot;
        label += '#';
      }
    }
    labels_[id] = std::move(label);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  // Children follow their parent in pre-order, so a reverse sweep sees every
  // subtree complete.
  for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
    Node& n = nodes_[*it];
    if (n.kind == ElementKind::Token)
      leaf_end_[*it] = leaf_first_[*it] + 1;
    else if (n.kind == ElementKind::Keyword)
      leaf_end_[*it] = leaf_first_[*it];
    else
      leaf_end_[*it] = leaf_end_[n.children.back()];
  }
}

std::vector<std::uint32_t> SimplifiedParseTree::token_sequence() const {
  std::vector<std::uint32_t> out;
  if (root_ == kNoNode) return out;
  std::vector<std::uint32_t> stack{root_};
  while (!stack.empty()) {
    std::uint32_t id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (n.kind != ElementKind::Tree) {
      out.push_back(id);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::string label_of(const SimplifiedParseTree& tree, std::uint32_t node) {
  return tree.label(node);
}

namespace {

void debug_append(const SimplifiedParseTree& t, std::uint32_t id, std::string& out) {
  const Node& n = t.node(id);
  if (n.kind != ElementKind::Tree) {
    out += '"';
    out += n.text;
    out += '"';
    return;
  }
  out += '[';
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    if (i) out += ", ";
    debug_append(t, n.children[i], out);
  }
  out += ']';
}

}  // namespace

std::string to_debug_string(const SimplifiedParseTree& tree) {
  std::string out;
  if (tree.empty()) return "[]";
  debug_append(tree, tree.root(), out);
  return out;
}

}  // namespace structrec::frontend
