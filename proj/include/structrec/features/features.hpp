#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "structrec/features/multiset.hpp"
#include "structrec/frontend/tree.hpp"
#include "structrec/frontend/variables.hpp"

namespace structrec::features {

inline constexpr std::string_view kVarToken = "#VAR";

struct Context {
  enum class Kind : std::uint8_t { Positional, Token };
  Kind kind = Kind::Positional;
  std::uint32_t slot = 0;  // Positional only
  std::string text;        // parent label, or the context token

  static Context positional(std::uint32_t slot, std::string label) {
    return {Kind::Positional, slot, std::move(label)};
  }
  static Context token(std::string text) { return {Kind::Token, 0, std::move(text)}; }
  bool operator==(const Context&) const = default;
};

enum class FeatureKind : std::uint8_t { Token, Parent, Sibling, VarUsage };

struct Feature {
  FeatureKind kind = FeatureKind::Token;
  std::string first;        // Token, Parent, Sibling
  std::string second;       // Parent label, Sibling right token
  std::uint32_t slot = 0;   // Parent
  Context from, to;         // VarUsage

  static Feature token(std::string t) { return {FeatureKind::Token, std::move(t), {}, 0, {}, {}}; }
  static Feature parent(std::string t, std::uint32_t slot, std::string label) {
    return {FeatureKind::Parent, std::move(t), std::move(label), slot, {}, {}};
  }
  static Feature sibling(std::string a, std::string b) {
    return {FeatureKind::Sibling, std::move(a), std::move(b), 0, {}, {}};
  }
  static Feature var_usage(Context a, Context b) {
    return {FeatureKind::VarUsage, {}, {}, 0, std::move(a), std::move(b)};
  }

  /// Canonical, injective byte encoding; the unit of interning.
  std::string key() const;
  /// Readable form, e.g. (#VAR,2,(#)#).
  std::string to_string() const;
  bool operator==(const Feature&) const = default;
};

using FeatureMultiset = Multiset<std::string>;

/// Read-only view of an annotated tree with the lookups featurization needs.
class FeatureContext {
 public:
  FeatureContext(const frontend::SimplifiedParseTree& tree, const frontend::VariableAnnotation& vars);

  const frontend::SimplifiedParseTree& tree() const { return tree_; }
  const frontend::VariableAnnotation& vars() const { return vars_; }
  std::size_t leaf_count() const { return tree_.leaves().size(); }
  bool is_local(std::uint32_t leaf) const;
  /// Token text with locals replaced by #VAR.
  std::string_view feature_text(std::uint32_t leaf) const;
  std::uint32_t prev_use(std::uint32_t leaf) const { return chains_.prev[leaf]; }
  std::uint32_t next_use(std::uint32_t leaf) const { return chains_.next[leaf]; }

 private:
  const frontend::SimplifiedParseTree& tree_;
  const frontend::VariableAnnotation& vars_;
  frontend::UseChains chains_;
};

/// C(n) for the leaf with ordinal `leaf`.
Context context_of(const FeatureContext& ctx, std::uint32_t leaf);

/// F(n): between 1 and 8 features.
std::vector<Feature> featurize_token(const FeatureContext& ctx, std::uint32_t leaf);

/// F(t) as keys, the union of F(n) over all leaves.
FeatureMultiset featurize_tree(const frontend::SimplifiedParseTree& tree,
                               const frontend::VariableAnnotation& vars);

/// Per-leaf feature keys, in leaf order.
std::vector<std::vector<std::string>> leaf_feature_keys(const frontend::SimplifiedParseTree& tree,
                                                        const frontend::VariableAnnotation& vars);

/// Non-keyword token texts (bag of words, locals not replaced).
std::vector<std::string> token_words(const frontend::SimplifiedParseTree& tree);

}  // namespace structrec::features
