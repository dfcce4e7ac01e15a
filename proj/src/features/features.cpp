#include "structrec/features/features.hpp"

namespace structrec::features {

using frontend::ElementKind;
using frontend::kNoNode;
using frontend::Node;
using frontend::VarClass;

namespace {

void append_field(std::string& out, std::string_view s) {
  out += std::to_string(s.size());
  out += ':';
  out += s;
}

void append_context_key(std::string& out, const Context& c) {
  if (c.kind == Context::Kind::Positional) {
    out += 'p';
    out += std::to_string(c.slot);
    out += ',';
  } else {
    out += 't';
  }
  append_field(out, c.text);
}

std::string context_string(const Context& c) {
  if (c.kind == Context::Kind::Token) return c.text;
  return "(" + std::to_string(c.slot) + "," + c.text + ")";
}

}  // namespace

std::string Feature::key() const {
  std::string k;
  switch (kind) {
    case FeatureKind::Token:
      k = "T";
      append_field(k, first);
      break;
    case FeatureKind::Parent:
      k = "P";
      append_field(k, first);
      k += std::to_string(slot);
      k += ',';
      append_field(k, second);
      break;
    case FeatureKind::Sibling:
      k = "S";
      append_field(k, first);
      append_field(k, second);
      break;
    case FeatureKind::VarUsage:
      k = "V";
      append_context_key(k, from);
      append_context_key(k, to);
      break;
  }
  return k;
}

std::string Feature::to_string() const {
  switch (kind) {
    case FeatureKind::Token: return first;
    case FeatureKind::Parent: return "(" + first + "," + std::to_string(slot) + "," + second + ")";
    case FeatureKind::Sibling: return "(" + first + "," + second + ")";
    case FeatureKind::VarUsage: return "(" + context_string(from) + "," + context_string(to) + ")";
  }
  return {};
}

FeatureContext::FeatureContext(const frontend::SimplifiedParseTree& tree,
                               const frontend::VariableAnnotation& vars)
    : tree_(tree), vars_(vars), chains_(frontend::use_chains(vars)) {}

bool FeatureContext::is_local(std::uint32_t leaf) const {
  return leaf < vars_.classes.size() && vars_.classes[leaf] == VarClass::Local;
}

std::string_view FeatureContext::feature_text(std::uint32_t leaf) const {
  if (is_local(leaf)) return kVarToken;
  return tree_.node(tree_.leaves()[leaf]).text;
}

Context context_of(const FeatureContext& ctx, std::uint32_t leaf) {
  const auto& tree = ctx.tree();
  const Node& n = tree.node(tree.leaves()[leaf]);
  if (n.parent == kNoNode) return Context::positional(0, "");
  const std::string& label = tree.label(n.parent);
  if (label == "#.#") {
    auto [first, end] = tree.leaf_range(n.parent);
    for (std::uint32_t l = first; l < end; ++l)
      if (!ctx.is_local(l)) return Context::token(tree.node(tree.leaves()[l]).text);
  }
  return Context::positional(n.slot, label);
}

std::vector<Feature> featurize_token(const FeatureContext& ctx, std::uint32_t leaf) {
  const auto& tree = ctx.tree();
  std::vector<Feature> out;
  out.reserve(8);
  std::string self(ctx.feature_text(leaf));
  out.push_back(Feature::token(self));

  std::uint32_t cur = tree.leaves()[leaf];
  for (int depth = 0; depth < 3; ++depth) {
    const Node& c = tree.node(cur);
    if (c.parent == kNoNode) break;
    out.push_back(Feature::parent(self, c.slot, tree.label(c.parent)));
    cur = c.parent;
  }

  if (leaf > 0) out.push_back(Feature::sibling(std::string(ctx.feature_text(leaf - 1)), self));
  if (leaf + 1 < ctx.leaf_count())
    out.push_back(Feature::sibling(self, std::string(ctx.feature_text(leaf + 1))));

  if (ctx.is_local(leaf)) {
    Context here = context_of(ctx, leaf);
    if (std::uint32_t p = ctx.prev_use(leaf); p != kNoNode)
      out.push_back(Feature::var_usage(context_of(ctx, p), here));
    if (std::uint32_t nx = ctx.next_use(leaf); nx != kNoNode)
      out.push_back(Feature::var_usage(here, context_of(ctx, nx)));
  }
  return out;
}

std::vector<std::vector<std::string>> leaf_feature_keys(const frontend::SimplifiedParseTree& tree,
                                                        const frontend::VariableAnnotation& vars) {
  FeatureContext ctx(tree, vars);
  std::vector<std::vector<std::string>> out(ctx.leaf_count());
  for (std::uint32_t l = 0; l < ctx.leaf_count(); ++l) {
    auto fs = featurize_token(ctx, l);
    out[l].reserve(fs.size());
    for (const auto& f : fs) out[l].push_back(f.key());
  }
  return out;
}

FeatureMultiset featurize_tree(const frontend::SimplifiedParseTree& tree,
                               const frontend::VariableAnnotation& vars) {
  std::vector<std::string> all;
  for (auto& keys : leaf_feature_keys(tree, vars))
    for (auto& k : keys) all.push_back(std::move(k));
  return FeatureMultiset::from_items(std::move(all));
}

std::vector<std::string> token_words(const frontend::SimplifiedParseTree& tree) {
  std::vector<std::string> out;
  out.reserve(tree.leaves().size());
  for (auto id : tree.leaves()) out.push_back(tree.node(id).text);
  return out;
}

}  // namespace structrec::features
