#include "structrec/recommend/cluster.hpp"

#include <algorithm>
#include <set>

#include "structrec/parallel.hpp"

namespace structrec::recommend {

namespace {

void finish_scores(ClusterTuple& t, std::uint64_t first_pruned) {
  t.l = t.csq == 0 ? 0.0 : static_cast<double>(t.cs) / static_cast<double>(t.csq);
  t.s = first_pruned == 0 ? 0.0 : static_cast<double>(t.csq) / static_cast<double>(first_pruned);
}

}  // namespace

ClusterTuple score_tuple(const std::vector<ClusterMember>& n2, std::vector<std::uint32_t> indices) {
  ClusterTuple t;
  t.indices = std::move(indices);
  if (t.indices.empty()) return t;
  IdBag full = *n2[t.indices[0]].full;
  IdBag pruned = *n2[t.indices[0]].pruned;
  for (std::size_t k = 1; k < t.indices.size(); ++k) {
    full = intersect(full, *n2[t.indices[k]].full);
    pruned = intersect(pruned, *n2[t.indices[k]].pruned);
  }
  t.cs = full.total();
  t.csq = pruned.total();
  finish_scores(t, n2[t.indices[0]].pruned->total());
  return t;
}

bool is_valid(const ClusterTuple& t, const ClusterThresholds& th) {
  return t.l > th.tau2 && t.s > th.tau3;
}

std::vector<ClusterTuple> grow_clusters(const std::vector<ClusterMember>& n2, const ClusterThresholds& th,
                                        unsigned workers) {
  std::vector<std::vector<ClusterTuple>> chains(n2.size());
  parallel_for(n2.size(), workers, [&](std::size_t first) {
    ClusterTuple t = score_tuple(n2, {static_cast<std::uint32_t>(first)});
    if (!is_valid(t, th)) return;
    const std::uint64_t first_pruned = n2[first].pruned->total();
    IdBag full = *n2[first].full;
    IdBag pruned = *n2[first].pruned;
    chains[first].push_back(t);
    while (true) {
      const auto& cur = chains[first].back();
      ClusterTuple best;
      bool found = false;
      for (std::uint32_t j = cur.indices.back() + 1; j < n2.size(); ++j) {
        ClusterTuple cand;
        // csq first: the s bound rejects most extensions without touching the
        // larger full bags.
        cand.csq = sim_score(pruned, *n2[j].pruned);
        if (static_cast<double>(cand.csq) / static_cast<double>(first_pruned) <= th.tau3) continue;
        cand.cs = sim_score(full, *n2[j].full);
        finish_scores(cand, first_pruned);
        if (!is_valid(cand, th)) continue;
        if (!found || cand.l > best.l) {
          best = cand;
          best.indices = cur.indices;
          best.indices.push_back(j);
          found = true;
        }
      }
      if (!found) break;
      full = intersect(full, *n2[best.indices.back()].full);
      pruned = intersect(pruned, *n2[best.indices.back()].pruned);
      chains[first].push_back(std::move(best));
    }
  });
  std::vector<ClusterTuple> out;
  for (auto& c : chains)
    for (auto& t : c) out.push_back(std::move(t));
  return out;
}

double jaccard(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::set<std::uint32_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (auto x : sa) inter += sb.count(x);
  std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<ClusterTuple> dedup_sort(std::vector<ClusterTuple> tuples) {
  std::sort(tuples.begin(), tuples.end(), [](const ClusterTuple& a, const ClusterTuple& b) {
    if (a.indices.front() != b.indices.front()) return a.indices.front() < b.indices.front();
    if (a.indices.size() != b.indices.size()) return a.indices.size() > b.indices.size();
    return a.indices < b.indices;
  });
  std::vector<ClusterTuple> kept;
  for (auto& t : tuples) {
    bool similar = false;
    for (const auto& k : kept)
      if (jaccard(t.indices, k.indices) > 0.5) {
        similar = true;
        break;
      }
    if (!similar) kept.push_back(std::move(t));
  }
  return kept;
}

}  // namespace structrec::recommend
