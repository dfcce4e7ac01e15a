#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "structrec/features/dictionary.hpp"
#include "structrec/features/multiset.hpp"
#include "structrec/frontend/source.hpp"

namespace structrec::index {

using features::FeatureId;

/// Compressed sparse rows. `values` holds term frequencies; the binary
/// matrix is the sparsity pattern.
struct CsrMatrix {
  std::vector<std::uint64_t> row_offsets{0};
  std::vector<std::uint32_t> cols;    // ascending within a row
  std::vector<std::uint32_t> values;  // multiplicity of the column in the row

  std::size_t rows() const { return row_offsets.size() - 1; }
  std::size_t nnz() const { return cols.size(); }
  std::span<const std::uint32_t> row_cols(std::size_t r) const {
    return {cols.data() + row_offsets[r], cols.data() + row_offsets[r + 1]};
  }
  std::span<const std::uint32_t> row_values(std::size_t r) const {
    return {values.data() + row_offsets[r], values.data() + row_offsets[r + 1]};
  }
  void append_row(const features::Multiset<std::uint32_t>& row);
  bool operator==(const CsrMatrix&) const = default;
};

struct CorpusIndex {
  static constexpr std::uint32_t kFormatVersion = 1;

  features::FeatureDictionary features;  // column ids of `matrix`
  CsrMatrix matrix;                      // |M| x |F|
  features::FeatureDictionary words;     // non-keyword token vocabulary
  CsrMatrix word_matrix;                 // |M| x |W|
  std::vector<frontend::MethodSource> methods;

  std::size_t method_count() const { return methods.size(); }
  /// |S(F(m))|.
  std::size_t support_size(std::size_t m) const {
    return static_cast<std::size_t>(matrix.row_offsets[m + 1] - matrix.row_offsets[m]);
  }
  /// |F(m)| with multiplicity.
  std::uint64_t feature_total(std::size_t m) const;

  bool operator==(const CorpusIndex& o) const {
    return features == o.features && matrix == o.matrix && words == o.words &&
           word_matrix == o.word_matrix && methods_equal(o);
  }

 private:
  bool methods_equal(const CorpusIndex& o) const;
};

struct BuildOptions {
  std::size_t max_features = std::numeric_limits<std::uint32_t>::max() - 1;
  unsigned workers = 1;
};

/// Featurizes every record and assembles both matrices. Column ids follow
/// first occurrence in record order, so the result depends only on the
/// record order. Throws CapacityError past `max_features`.
CorpusIndex build_index(std::vector<frontend::MethodSource> records, const BuildOptions& options = {});

/// Writes the binary index format (see docs/index-format.md).
void save_index(const CorpusIndex& index, const std::filesystem::path& path);
std::string serialize_index(const CorpusIndex& index);
/// Throws FormatError on a bad magic, version, size or checksum.
CorpusIndex load_index(const std::filesystem::path& path);
CorpusIndex deserialize_index(std::string_view bytes);
/// CRC-32 stored in the header of a serialized index.
std::uint32_t index_checksum(std::string_view serialized);

/// Parsed tree and per-leaf feature ids of one indexed method.
struct MethodFeatures {
  frontend::AnnotatedTree tree;
  std::vector<std::vector<FeatureId>> leaf_ids;
  features::Multiset<FeatureId> bag;  // F(m)
};

/// Computes MethodFeatures for a record against the index dictionary.
/// Features missing from the dictionary throw FormatError.
MethodFeatures compute_method_features(const CorpusIndex& index, std::size_t method);

/// Lazily filled, thread-safe cache of MethodFeatures per method.
class MethodCache {
 public:
  explicit MethodCache(const CorpusIndex& index);
  const MethodFeatures& get(std::size_t method) const;
  const CorpusIndex& index() const { return index_; }

 private:
  struct Slot {
    std::once_flag once;
    std::unique_ptr<MethodFeatures> value;
  };
  const CorpusIndex& index_;
  std::unique_ptr<Slot[]> slots_;
};

}  // namespace structrec::index
