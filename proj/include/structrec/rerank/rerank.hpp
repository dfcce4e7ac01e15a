#pragma once

#include <cstdint>
#include <vector>

#include "structrec/index/corpus_index.hpp"
#include "structrec/rerank/prune.hpp"
#include "structrec/search/search.hpp"

namespace structrec::rerank {

struct RerankedCandidate {
  std::uint32_t method = 0;
  std::uint32_t phase1_rank = 0;
  std::uint64_t score = 0;  // sim_score(F(q), F(pruned))
  double normalized = 0.0;  // score / |F(q)|
  PruneResult pruned;
};

/// Prunes every candidate against F(q) and orders by score, ties by Phase I
/// rank. Candidates are pruned on up to `workers` threads.
std::vector<RerankedCandidate> rerank(const index::MethodCache& cache, const search::QueryFeatures& q,
                                      const std::vector<search::RankedCandidate>& candidates,
                                      unsigned workers = 1);

}  // namespace structrec::rerank
