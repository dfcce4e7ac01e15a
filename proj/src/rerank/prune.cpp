#include "structrec/rerank/prune.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace structrec::rerank {

using frontend::ElementKind;
using frontend::kNoNode;
using frontend::Node;
using frontend::SimplifiedParseTree;

namespace {

// Dense per-thread deficit table, reset after every use.
class Deficits {
 public:
  void load(const IdBag& target) {
    if (!target.empty()) {
      std::size_t need = static_cast<std::size_t>(target.entries().back().first) + 1;
      if (table_.size() < need) table_.resize(need, 0);
    }
    for (const auto& [id, c] : target.entries()) table_[id] = c;
    target_ = &target;
  }
  void clear() {
    for (const auto& [id, c] : target_->entries()) table_[id] = 0;
  }
  std::uint32_t get(FeatureId id) const { return id < table_.size() ? table_[id] : 0; }
  void take(FeatureId id) {
    if (id < table_.size() && table_[id] > 0) --table_[id];
  }

 private:
  std::vector<std::uint32_t> table_;
  const IdBag* target_ = nullptr;
};

thread_local Deficits t_deficits;

// Sum over distinct features of min(multiplicity in leaf, deficit).
std::uint64_t gain(const Deficits& d, const std::vector<FeatureId>& ids) {
  std::uint64_t g = 0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::uint32_t earlier = 0;
    for (std::size_t j = 0; j < i; ++j) earlier += ids[j] == ids[i];
    if (d.get(ids[i]) > earlier) ++g;
  }
  return g;
}

struct HeapEntry {
  std::uint64_t gain;
  std::uint32_t leaf;
  // Max-heap on gain, then on earliest leaf.
  bool operator<(const HeapEntry& o) const {
    if (gain != o.gain) return gain < o.gain;
    return leaf > o.leaf;
  }
};

}  // namespace

PruneResult prune(const IdBag& target, const LeafIds& leaf_ids) {
  PruneResult out;
  if (target.empty()) return out;
  Deficits& d = t_deficits;
  d.load(target);

  std::priority_queue<HeapEntry> heap;
  for (std::uint32_t l = 0; l < leaf_ids.size(); ++l) {
    std::uint64_t g = gain(d, leaf_ids[l]);
    if (g > 0) heap.push({g, l});
  }
  std::vector<FeatureId> chosen;
  while (!heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    std::uint64_t g = gain(d, leaf_ids[top.leaf]);
    if (g == 0) continue;
    HeapEntry fresh{g, top.leaf};
    if (!heap.empty() && fresh < heap.top()) {
      heap.push(fresh);
      continue;
    }
    out.retained.push_back(top.leaf);
    out.score += g;
    for (FeatureId f : leaf_ids[top.leaf]) {
      d.take(f);
      chosen.push_back(f);
    }
  }
  d.clear();
  std::sort(out.retained.begin(), out.retained.end());
  out.features = IdBag::from_items(std::move(chosen));
  return out;
}

std::uint64_t prune_optimum(const IdBag& target, const LeafIds& leaf_ids) {
  if (leaf_ids.size() > 20) throw std::invalid_argument("prune_optimum: too many leaves");
  std::uint64_t best = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(leaf_ids.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<FeatureId> ids;
    for (std::uint32_t l = 0; l < n; ++l)
      if (mask >> l & 1) ids.insert(ids.end(), leaf_ids[l].begin(), leaf_ids[l].end());
    best = std::max(best, sim_score(target, IdBag::from_items(std::move(ids))));
  }
  return best;
}

std::vector<std::uint8_t> retained_nodes(const SimplifiedParseTree& tree,
                                         const std::vector<std::uint32_t>& retained_leaves) {
  std::vector<std::uint8_t> keep(tree.node_count(), 0);
  for (std::uint32_t l : retained_leaves) {
    std::uint32_t id = tree.leaves()[l];
    while (id != kNoNode && !keep[id]) {
      keep[id] = 1;
      id = tree.node(id).parent;
    }
  }
  return keep;
}

SimplifiedParseTree induced_tree(const SimplifiedParseTree& tree,
                                 const std::vector<std::uint32_t>& retained_leaves,
                                 std::vector<std::uint32_t>* leaf_origin) {
  SimplifiedParseTree out;
  auto keep = retained_nodes(tree, retained_leaves);
  if (tree.empty() || !keep[tree.root()]) {
    out.finalize(kNoNode);
    if (leaf_origin) leaf_origin->clear();
    return out;
  }
  // Post-order copy with an explicit stack.
  struct Frame {
    std::uint32_t id;
    std::size_t next_child;
    std::vector<std::uint32_t> built;
  };
  std::vector<Frame> stack;
  std::uint32_t root_copy = kNoNode;
  auto copy_leaf = [&](const Node& n) {
    return out.add_token(n.kind, n.text, n.offset, n.length);
  };
  auto deliver = [&](std::uint32_t copy) {
    if (stack.empty())
      root_copy = copy;
    else
      stack.back().built.push_back(copy);
  };
  const Node& root = tree.node(tree.root());
  if (root.kind != ElementKind::Tree) {
    root_copy = copy_leaf(root);
  } else {
    stack.push_back({tree.root(), 0, {}});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const Node& n = tree.node(f.id);
      if (f.next_child == n.children.size()) {
        std::uint32_t copy = out.add_list(std::move(f.built));
        stack.pop_back();
        deliver(copy);
        continue;
      }
      std::uint32_t c = n.children[f.next_child++];
      const Node& child = tree.node(c);
      if (child.kind == ElementKind::Keyword) {
        f.built.push_back(copy_leaf(child));
      } else if (keep[c]) {
        if (child.kind == ElementKind::Token)
          f.built.push_back(copy_leaf(child));
        else
          stack.push_back({c, 0, {}});
      }
    }
  }
  out.finalize(root_copy);
  if (leaf_origin) {
    leaf_origin->assign(retained_leaves.begin(), retained_leaves.end());
    std::sort(leaf_origin->begin(), leaf_origin->end());
  }
  return out;
}

}  // namespace structrec::rerank
