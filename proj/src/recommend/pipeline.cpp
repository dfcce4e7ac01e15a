#include "structrec/recommend/pipeline.hpp"

#include <algorithm>

#include <json.hpp>

#include "structrec/error.hpp"

namespace structrec::recommend {

using rerank::IdBag;
using rerank::LeafIds;
using rerank::PruneResult;

Engine::Engine(const index::CorpusIndex& index)
    : index_(index),
      cache_(index),
      feature_model_(index.matrix, index.features.size()),
      keyword_model_(index.word_matrix, index.words.size()) {}

PruneResult prune_subset(const IdBag& target, const LeafIds& leaf_ids, const std::vector<std::uint32_t>& subset) {
  LeafIds sub;
  sub.reserve(subset.size());
  for (auto l : subset) sub.push_back(leaf_ids[l]);
  PruneResult r = rerank::prune(target, sub);
  for (auto& l : r.retained) l = subset[l];
  return r;
}

std::vector<std::uint32_t> intersect(const LeafIds& first_leaves, const std::vector<const IdBag*>& others,
                                     const IdBag& query, UnionMode mode) {
  if (others.empty()) return rerank::prune(query, first_leaves).retained;
  std::vector<std::uint32_t> current = rerank::prune(sum(*others[0], query), first_leaves).retained;
  for (std::size_t k = 1; k < others.size(); ++k) {
    IdBag target = mode == UnionMode::AsWritten ? unite(*others[k], query) : sum(*others[k], query);
    current = prune_subset(target, first_leaves, current).retained;
  }
  return current;
}

std::vector<Recommendation> recommend(const Engine& engine, const frontend::AnnotatedTree& query,
                                      const EngineConfig& config, PipelineTrace* trace) {
  config.validate();
  PipelineTrace local;
  PipelineTrace& t = trace ? *trace : local;
  const auto& index = engine.index();
  t.query = search::resolve_query(index, query);
  if (t.query.total() == 0) throw EmptyQueryError();
  t.phase1 = search::overlap_search(index, t.query, config.eta1);
  if (t.phase1.empty()) throw NoResultError();
  t.reranked = rerank::rerank(engine.cache(), t.query, t.phase1, config.workers);

  std::vector<ClusterMember> n2;
  std::vector<std::uint32_t> n2_methods;
  for (std::size_t i = 0; i < t.reranked.size() && n2.size() < config.eta2; ++i) {
    const auto& r = t.reranked[i];
    if (!(r.normalized > config.tau1)) continue;
    n2.push_back({&engine.cache().get(r.method).bag, &r.pruned.features});
    n2_methods.push_back(r.method);
  }
  t.n2_size = n2.size();
  t.clusters = grow_clusters(n2, {config.tau2, config.tau3}, config.workers);
  t.n3 = dedup_sort(t.clusters);
  // No valid tuple: optionally the best N₂ member alone, marked as such.
  bool fallback = config.fallback && t.n3.empty() && !n2.empty();
  if (fallback) t.n3.push_back(score_tuple(n2, {0}));

  std::vector<Recommendation> out;
  for (std::size_t k = 0; k < t.n3.size() && out.size() < config.topk; ++k) {
    const ClusterTuple& tuple = t.n3[k];
    Recommendation rec;
    rec.rank = static_cast<std::uint32_t>(out.size() + 1);
    rec.tuple = tuple;
    rec.fallback = fallback;
    for (auto i : tuple.indices) rec.methods.push_back(n2_methods[i]);
    const auto& first = engine.cache().get(rec.methods[0]);
    if (tuple.indices.size() == 1) {
      rec.retained_leaves.resize(first.leaf_ids.size());
      for (std::uint32_t l = 0; l < rec.retained_leaves.size(); ++l) rec.retained_leaves[l] = l;
    } else {
      std::vector<const IdBag*> others;
      for (std::size_t j = 1; j < rec.methods.size(); ++j)
        others.push_back(&engine.cache().get(rec.methods[j]).bag);
      rec.retained_leaves = intersect(first.leaf_ids, others, t.query.bag, config.union_mode);
    }
    rec.extra.assign(first.leaf_ids.size(), 0);
    for (auto l : rec.retained_leaves) rec.extra[l] = 1;
    for (auto l : prune_subset(t.query.bag, first.leaf_ids, rec.retained_leaves).retained) rec.extra[l] = 0;
    Rendered r = render_recommendation(engine, rec, {config.placeholders, Highlight::None, 2});
    rec.snippet = std::move(r.text);
    rec.extra_lines = std::move(r.extra_lines);
    out.push_back(std::move(rec));
  }
  return out;
}

Rendered render_recommendation(const Engine& engine, const Recommendation& rec, const RenderOptions& options) {
  const auto& first = engine.cache().get(rec.methods[0]);
  const auto& tree = first.tree.tree;
  std::vector<std::uint8_t> keep;
  if (rec.retained_leaves.size() != tree.leaves().size())
    keep = rerank::retained_nodes(tree, rec.retained_leaves);
  return render(tree, keep, rec.extra, options);
}

std::string recommendations_to_json(const Engine& engine, const std::vector<Recommendation>& recs,
                                    const EngineConfig& config) {
  using nlohmann::json;
  json list = json::array();
  for (const auto& rec : recs) {
    json methods = json::array();
    for (auto id : rec.methods) {
      const auto& m = engine.index().methods[id];
      methods.push_back({{"id", id},
                         {"project", m.project},
                         {"path", m.path},
                         {"name", m.name},
                         {"offset", m.file_offset},
                         {"length", m.text.size()}});
    }
    list.push_back({{"rank", rec.rank},
                    {"snippet", rec.snippet},
                    {"cluster_size", rec.methods.size()},
                    {"fallback", rec.fallback},
                    {"methods", methods},
                    {"scores", {{"cs", rec.tuple.cs}, {"csq", rec.tuple.csq}, {"l", rec.tuple.l}, {"s", rec.tuple.s}}},
                    {"extra_lines", rec.extra_lines}});
  }
  json doc = {{"recommendations", list},
              {"config",
               {{"eta1", config.eta1},
                {"eta2", config.eta2},
                {"tau1", config.tau1},
                {"tau2", config.tau2},
                {"tau3", config.tau3},
                {"topk", config.topk},
                {"union_mode", to_string(config.union_mode)},
                {"placeholders", config.placeholders},
                {"fallback", config.fallback}}}};
  return doc.dump(2) + "\n";
}

}  // namespace structrec::recommend
