#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "structrec/index/corpus_index.hpp"
#include "structrec/recommend/cluster.hpp"
#include "structrec/recommend/config.hpp"
#include "structrec/recommend/render.hpp"
#include "structrec/rerank/rerank.hpp"
#include "structrec/search/search.hpp"

namespace structrec::recommend {

/// Read-only query engine over one index. Safe for concurrent queries.
class Engine {
 public:
  explicit Engine(const index::CorpusIndex& index);

  const index::CorpusIndex& index() const { return index_; }
  const index::MethodCache& cache() const { return cache_; }
  const search::TfidfModel& feature_model() const { return feature_model_; }
  const search::TfidfModel& keyword_model() const { return keyword_model_; }

 private:
  const index::CorpusIndex& index_;
  index::MethodCache cache_;
  search::TfidfModel feature_model_;
  search::TfidfModel keyword_model_;
};

/// Leaves of the first member kept by the recursive intersection:
///   one member:  Prune(F(q), first)
///   two members: Prune(F(second) ⊎ F(q), first)
///   more:        Prune(F(next) ∪ F(q), previous result), where ∪ becomes ⊎
///                in UnionMode::Uniform.
std::vector<std::uint32_t> intersect(const rerank::LeafIds& first_leaves,
                                     const std::vector<const rerank::IdBag*>& others,
                                     const rerank::IdBag& query, UnionMode mode);

/// Prune restricted to a subset of leaves; returns ordinals of the full tree.
rerank::PruneResult prune_subset(const rerank::IdBag& target, const rerank::LeafIds& leaf_ids,
                                 const std::vector<std::uint32_t>& subset);

struct Recommendation {
  std::uint32_t rank = 0;  // 1-based
  ClusterTuple tuple;
  std::vector<std::uint32_t> methods;          // method ids in tuple order
  std::vector<std::uint32_t> retained_leaves;  // of the first member
  std::vector<std::uint8_t> extra;             // per leaf of the first member
  std::string snippet;
  std::vector<std::uint32_t> extra_lines;
  bool fallback = false;  // no valid tuple; the top N₂ member on its own
};

struct PipelineTrace {
  search::QueryFeatures query;
  std::vector<search::RankedCandidate> phase1;
  std::vector<rerank::RerankedCandidate> reranked;
  std::size_t n2_size = 0;
  std::vector<ClusterTuple> clusters;  // all valid tuples
  std::vector<ClusterTuple> n3;        // after dedup_sort
};

/// Phase I, II and III for one query. Clusters of one method yield the whole
/// method body. With config.fallback, when no tuple is valid but N₂ is not
/// empty, the top N₂ member is returned alone with `fallback` set. Throws EmptyQueryError, NoResultError.
std::vector<Recommendation> recommend(const Engine& engine, const frontend::AnnotatedTree& query,
                                      const EngineConfig& config, PipelineTrace* trace = nullptr);

/// Renders a recommendation from the first member's tree.
Rendered render_recommendation(const Engine& engine, const Recommendation& rec, const RenderOptions& options);

/// Stable JSON document for a recommendation list.
std::string recommendations_to_json(const Engine& engine, const std::vector<Recommendation>& recs,
                                    const EngineConfig& config);

}  // namespace structrec::recommend
