#include "structrec/rerank/rerank.hpp"

#include <algorithm>

#include "structrec/parallel.hpp"

namespace structrec::rerank {

std::vector<RerankedCandidate> rerank(const index::MethodCache& cache, const search::QueryFeatures& q,
                                      const std::vector<search::RankedCandidate>& candidates,
                                      unsigned workers) {
  std::vector<RerankedCandidate> out(candidates.size());
  const double total = static_cast<double>(q.total());
  parallel_for(candidates.size(), workers, [&](std::size_t i) {
    const auto& mf = cache.get(candidates[i].method);
    RerankedCandidate& r = out[i];
    r.method = candidates[i].method;
    r.phase1_rank = static_cast<std::uint32_t>(i);
    r.pruned = prune(q.bag, mf.leaf_ids);
    r.score = r.pruned.score;
    r.normalized = total > 0 ? r.score / total : 0.0;
  });
  std::stable_sort(out.begin(), out.end(), [](const RerankedCandidate& a, const RerankedCandidate& b) {
    return a.score > b.score;
  });
  return out;
}

}  // namespace structrec::rerank
