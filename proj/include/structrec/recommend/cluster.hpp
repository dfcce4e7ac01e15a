#pragma once

#include <cstdint>
#include <vector>

#include "structrec/rerank/prune.hpp"

namespace structrec::recommend {

using rerank::IdBag;

/// Features of one member of the reranked list N₂.
struct ClusterMember {
  const IdBag* full = nullptr;    // F(N₂(i))
  const IdBag* pruned = nullptr;  // F(Prune(F(q), N₂(i)))
};

struct ClusterTuple {
  std::vector<std::uint32_t> indices;  // strictly increasing positions in N₂
  std::uint64_t cs = 0;
  std::uint64_t csq = 0;
  double l = 0.0;  // cs / csq
  double s = 0.0;  // csq / |F(pruned first member)|

  bool operator==(const ClusterTuple& o) const { return indices == o.indices; }
};

struct ClusterThresholds {
  double tau2 = 1.5;
  double tau3 = 0.9;
};

/// Scores a tuple from scratch.
ClusterTuple score_tuple(const std::vector<ClusterMember>& n2, std::vector<std::uint32_t> indices);
bool is_valid(const ClusterTuple& t, const ClusterThresholds& th);

/// Valid singletons, each grown one index at a time: the extension with the
/// largest l among valid extensions (ties to the smallest index) is added
/// until none is valid. Returns every tuple reached, ordered by indices.
std::vector<ClusterTuple> grow_clusters(const std::vector<ClusterMember>& n2, const ClusterThresholds& th,
                                        unsigned workers = 1);

double jaccard(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);

/// Orders by first index ascending, then length descending, and drops any
/// tuple whose Jaccard similarity with an earlier kept tuple exceeds 0.5.
std::vector<ClusterTuple> dedup_sort(std::vector<ClusterTuple> tuples);

}  // namespace structrec::recommend
