#pragma once

#include <cstdint>
#include <vector>

#include "structrec/features/dictionary.hpp"
#include "structrec/features/multiset.hpp"
#include "structrec/frontend/tree.hpp"

namespace structrec::rerank {

using features::FeatureId;
using IdBag = features::Multiset<FeatureId>;
using LeafIds = std::vector<std::vector<FeatureId>>;

struct PruneResult {
  std::vector<std::uint32_t> retained;  // leaf ordinals R, ascending
  IdBag features;                       // ⊎ F(n) over n in R
  std::uint64_t score = 0;              // sim_score(target, features)
};

/// Greedy leaf selection: repeatedly adds the leaf whose features raise
/// sim_score(target, ·) the most, ties to the earliest leaf, until no leaf
/// raises it. Gains are evaluated against per-feature deficits and kept in a
/// lazily refreshed max-heap; gains never grow, so a refreshed top that still
/// beats the next bound is the true maximum.
PruneResult prune(const IdBag& target, const LeafIds& leaf_ids);

/// Exhaustive optimum of sim_score(target, ⊎ F(n)) over all leaf subsets.
/// Exponential; for checking the greedy result on small trees.
std::uint64_t prune_optimum(const IdBag& target, const LeafIds& leaf_ids);

/// Node ids lying on a path from the root to a retained leaf.
std::vector<std::uint8_t> retained_nodes(const frontend::SimplifiedParseTree& tree,
                                         const std::vector<std::uint32_t>& retained_leaves);

/// Copy of the retained part of a tree. Retained trees keep all their keyword
/// elements; a list left with one element collapses to it.
frontend::SimplifiedParseTree induced_tree(const frontend::SimplifiedParseTree& tree,
                                           const std::vector<std::uint32_t>& retained_leaves,
                                           std::vector<std::uint32_t>* leaf_origin = nullptr);

}  // namespace structrec::rerank
