#include "structrec/search/search.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "structrec/error.hpp"
#include "structrec/features/features.hpp"

namespace structrec::search {

using features::Multiset;

QueryFeatures resolve_query(const index::CorpusIndex& index, const frontend::AnnotatedTree& query) {
  QueryFeatures q;
  std::unordered_map<std::string, FeatureId> unknown;
  std::vector<FeatureId> ids;
  for (auto& leaf : features::leaf_feature_keys(query.tree, query.vars)) {
    for (auto& k : leaf) {
      if (auto id = index.features.find(k)) {
        ids.push_back(*id);
        continue;
      }
      auto next = static_cast<FeatureId>(index.features.size() + unknown.size());
      ids.push_back(unknown.try_emplace(std::move(k), next).first->second);
    }
  }
  q.bag = Multiset<FeatureId>::from_items(std::move(ids));
  q.support = q.bag.support();
  std::vector<std::uint32_t> words;
  for (const auto& w : features::token_words(query.tree)) {
    if (auto id = index.words.find(w))
      words.push_back(*id);
    else
      ++q.unknown_words;
  }
  q.words = Multiset<std::uint32_t>::from_items(std::move(words));
  return q;
}

std::vector<RankedCandidate> overlap_search(const index::CorpusIndex& index, const QueryFeatures& q,
                                            std::size_t limit) {
  if (q.support.empty()) throw EmptyQueryError();
  const std::size_t n_features = index.features.size();
  std::vector<std::uint8_t> member(n_features, 0);
  for (FeatureId f : q.support)
    if (f < n_features) member[f] = 1;

  std::vector<RankedCandidate> hits;
  const auto& m = index.matrix;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint32_t raw = 0;
    for (std::uint64_t k = m.row_offsets[r]; k < m.row_offsets[r + 1]; ++k) raw += member[m.cols[k]];
    if (raw > 0) hits.push_back({static_cast<std::uint32_t>(r), raw, 0.0});
  }
  auto before = [](const RankedCandidate& a, const RankedCandidate& b) {
    if (a.raw != b.raw) return a.raw > b.raw;
    return a.method < b.method;
  };
  if (hits.size() > limit) {
    std::nth_element(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(limit), hits.end(), before);
    hits.resize(limit);
  }
  std::sort(hits.begin(), hits.end(), before);
  const double denom = static_cast<double>(q.support.size());
  for (auto& h : hits) h.normalized = h.raw / denom;
  return hits;
}

double tfidf_weight(std::uint32_t tf, double idf) {
  return tf == 0 ? 0.0 : (1.0 + std::log(static_cast<double>(tf))) * idf;
}

TfidfModel::TfidfModel(const index::CsrMatrix& matrix, std::size_t columns)
    : matrix_(matrix), idf_(columns, 0.0), norms_(matrix.rows(), 0.0) {
  std::vector<std::uint64_t> df(columns, 0);
  for (auto c : matrix.cols) ++df[c];
  const double j = static_cast<double>(matrix.rows());
  for (std::size_t c = 0; c < columns; ++c)
    idf_[c] = df[c] == 0 ? 0.0 : std::log(j / static_cast<double>(df[c]));
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    double s = 0.0;
    auto cols = matrix.row_cols(r);
    auto vals = matrix.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      double w = tfidf_weight(vals[k], idf_[cols[k]]);
      s += w * w;
    }
    norms_[r] = std::sqrt(s);
  }
}

std::vector<ScoredMethod> TfidfModel::search(const Multiset<std::uint32_t>& query, std::size_t limit) const {
  if (query.empty()) throw EmptyQueryError();
  std::vector<double> weights(idf_.size(), 0.0);
  double qn = 0.0;
  for (const auto& [col, tf] : query.entries()) {
    if (col >= idf_.size()) continue;
    double w = tfidf_weight(tf, idf_[col]);
    weights[col] = w;
    qn += w * w;
  }
  std::vector<ScoredMethod> out;
  if (qn == 0.0) return out;
  qn = std::sqrt(qn);
  for (std::size_t r = 0; r < matrix_.rows(); ++r) {
    if (norms_[r] == 0.0) continue;
    double dot = 0.0;
    auto cols = matrix_.row_cols(r);
    auto vals = matrix_.row_values(r);
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (double w = weights[cols[k]]; w != 0.0) dot += w * tfidf_weight(vals[k], idf_[cols[k]]);
    if (dot > 0.0) out.push_back({static_cast<std::uint32_t>(r), dot / (qn * norms_[r])});
  }
  auto before = [](const ScoredMethod& a, const ScoredMethod& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.method < b.method;
  };
  if (out.size() > limit) {
    std::nth_element(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(limit), out.end(), before);
    out.resize(limit);
  }
  std::sort(out.begin(), out.end(), before);
  return out;
}

std::vector<ScoredMethod> tfidf_feature_search(const TfidfModel& model, const QueryFeatures& q,
                                               std::size_t limit) {
  return model.search(q.bag, limit);
}

std::vector<ScoredMethod> tfidf_keyword_search(const TfidfModel& model, const QueryFeatures& q,
                                               std::size_t limit) {
  if (q.words.empty() && q.unknown_words == 0) throw EmptyQueryError();
  if (q.words.empty()) return {};
  return model.search(q.words, limit);
}

}  // namespace structrec::search
