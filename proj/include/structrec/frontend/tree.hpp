#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace structrec::frontend {

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::size_t kNoOffset = std::numeric_limits<std::size_t>::max();

enum class ElementKind : std::uint8_t { Keyword, Token, Tree };

// Syntactic role the parser saw for a non-keyword token. Consumed by
// classify_variables(); imported trees carry no roles.
enum class LeafRole : std::uint8_t {
  Use,          // identifier in an expression position
  Declaration,  // identifier introducing a local (declarator, parameter, catch)
  Member,       // right of '.', callee names, method names, labels
  Type,         // identifier inside a type
  Literal,
};

struct Node {
  ElementKind kind = ElementKind::Token;
  std::uint32_t parent = kNoNode;
  // 1-based position among the non-keyword elements ('#' slots) of the
  // parent; 0 for keyword elements and for the root.
  std::uint32_t slot = 0;
  std::string text;  // empty for Tree
  std::size_t offset = kNoOffset;
  std::size_t length = 0;
  std::vector<std::uint32_t> children;  // Tree only
};

/// Ordered tree of keyword tokens, non-keyword tokens and subtrees.
///
/// Nodes live in an arena; `root()` is kNoNode for the empty snippet. A
/// degenerate one-token program has that token as its root. Otherwise no
/// Tree node has zero children, and no Tree node consists of a single Tree.
class SimplifiedParseTree {
 public:
  SimplifiedParseTree() = default;

  // Builder interface.
  std::uint32_t add_token(ElementKind kind, std::string text, std::size_t offset = kNoOffset,
                          std::size_t length = 0);
  // Creates a list node; a single element is returned unwrapped.
  std::uint32_t add_list(std::vector<std::uint32_t> elements);
  // Fixes the root and computes parent links, slots, leaves and labels.
  void finalize(std::uint32_t root);

  std::uint32_t root() const { return root_; }
  bool empty() const { return root_ == kNoNode; }
  const Node& node(std::uint32_t id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Non-keyword token node ids in source order, i.e. N(root).
  const std::vector<std::uint32_t>& leaves() const { return leaves_; }
  /// Ordinal of a leaf node in leaves(); kNoNode for non-leaves.
  std::uint32_t leaf_index(std::uint32_t node) const { return leaf_index_[node]; }

  /// Half-open range of leaf ordinals below a node, i.e. N(node).
  std::pair<std::uint32_t, std::uint32_t> leaf_range(std::uint32_t node) const {
    return {leaf_first_[node], leaf_end_[node]};
  }

  /// Concatenation of keyword texts with '#' for tokens and subtrees.
  const std::string& label(std::uint32_t tree_node) const { return labels_[tree_node]; }

  /// Every token (keyword and non-keyword) in in-order traversal.
  std::vector<std::uint32_t> token_sequence() const;

  // Parser side information, indexed by leaf ordinal.
  std::vector<LeafRole> roles;
  std::vector<std::uint32_t> scopes;        // innermost lexical scope per leaf
  std::vector<std::uint32_t> scope_parent;  // scope tree; scope 0 is the root
  // Names bound before the first token (method parameters).
  std::vector<std::string> outer_locals;

  bool has_roles() const { return roles.size() == leaves_.size(); }

 private:
  std::vector<Node> nodes_;
  std::uint32_t root_ = kNoNode;
  std::vector<std::uint32_t> leaves_;
  std::vector<std::uint32_t> leaf_index_;
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> leaf_first_;
  std::vector<std::uint32_t> leaf_end_;
};

std::string label_of(const SimplifiedParseTree& tree, std::uint32_t node);

/// Bracketed debug form, e.g. ["x", ">", ["y", ".", "f"]].
std::string to_debug_string(const SimplifiedParseTree& tree);

}  // namespace structrec::frontend
