#pragma once

#include <cstdint>
#include <vector>

#include "structrec/features/multiset.hpp"
#include "structrec/frontend/interchange.hpp"
#include "structrec/index/corpus_index.hpp"

namespace structrec::search {

using features::FeatureId;

/// Query features mapped into the index id space. Features unknown to the
/// index get ids at or above the dictionary size, numbered per query.
struct QueryFeatures {
  features::Multiset<FeatureId> bag;  // F(q)
  std::vector<FeatureId> support;     // S(F(q)), ascending
  features::Multiset<FeatureId> words;  // non-keyword token words, known words only
  std::size_t unknown_words = 0;

  std::uint64_t total() const { return bag.total(); }
};

QueryFeatures resolve_query(const index::CorpusIndex& index, const frontend::AnnotatedTree& query);

struct RankedCandidate {
  std::uint32_t method = 0;
  std::uint32_t raw = 0;    // |S(F(m)) ∩ S(F(q))|
  double normalized = 0.0;  // raw / |S(F(q))|
};

/// Top `limit` methods by support overlap (D times the binary query vector).
/// Order: raw descending, then method id.
/// Zero-overlap methods are dropped. Throws EmptyQueryError.
std::vector<RankedCandidate> overlap_search(const index::CorpusIndex& index, const QueryFeatures& q,
                                            std::size_t limit);

struct ScoredMethod {
  std::uint32_t method = 0;
  double score = 0.0;
};

/// Log-scaled TF-IDF over one of the index matrices, with unit-normalized
/// rows: weight = (1 + ln tf) * ln(J / df).
class TfidfModel {
 public:
  TfidfModel(const index::CsrMatrix& matrix, std::size_t columns);

  double idf(std::uint32_t column) const { return idf_[column]; }
  double row_norm(std::size_t row) const { return norms_[row]; }

  /// Cosine ranking; ties by method id, zero scores dropped. Columns outside
  /// the model are ignored. Throws EmptyQueryError on an empty query.
  std::vector<ScoredMethod> search(const features::Multiset<std::uint32_t>& query, std::size_t limit) const;

 private:
  const index::CsrMatrix& matrix_;
  std::vector<double> idf_;
  std::vector<double> norms_;
};

double tfidf_weight(std::uint32_t tf, double idf);

/// TF-IDF over structural features.
std::vector<ScoredMethod> tfidf_feature_search(const TfidfModel& model, const QueryFeatures& q,
                                               std::size_t limit);
/// TF-IDF over non-keyword token words.
std::vector<ScoredMethod> tfidf_keyword_search(const TfidfModel& model, const QueryFeatures& q,
                                               std::size_t limit);

}  // namespace structrec::search
