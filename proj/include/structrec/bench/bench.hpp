#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "structrec/recommend/pipeline.hpp"

namespace structrec::bench {

enum class QueryKind : std::uint8_t { Contiguous, NonContiguous };

std::string to_string(QueryKind k);
QueryKind parse_query_kind(const std::string& s);

inline constexpr std::size_t kMinBodyLines = 12;
inline constexpr std::size_t kQueryLines = 5;
inline constexpr int kMaxResamples = 20;

struct BenchmarkQuery {
  std::uint32_t origin = 0;
  QueryKind kind = QueryKind::Contiguous;
  std::vector<std::uint32_t> lines;  // 1-based body line numbers, ascending
  std::string text;
};

/// Non-blank physical lines strictly inside a method body's outer braces,
/// comments removed. Empty for methods stored as trees.
std::vector<std::string> body_lines(const frontend::MethodSource& m);

/// The selected lines joined by newlines. Closing brackets that match nothing
/// are dropped and unclosed ones are closed, so a cut through a block still
/// parses. Returns nothing if the result does not parse as a snippet.
std::optional<std::string> assemble_query(const std::vector<std::string>& lines,
                                          const std::vector<std::uint32_t>& selected);

struct QuerySet {
  std::vector<BenchmarkQuery> queries;
  std::size_t eligible = 0;  // methods with at least kMinBodyLines lines
  std::size_t skipped = 0;   // sampled origins dropped after failed repairs
};

/// Samples `n` distinct origins with at least kMinBodyLines body lines.
/// Contiguous queries take lines 1-5; non-contiguous ones take 5 distinct
/// lines uniformly, in source order, resampling up to kMaxResamples times
/// when the selection does not parse. Origins that yield no query are
/// skipped and replaced. Throws InsufficientCorpusError when fewer than `n`
/// origins are eligible or usable.
QuerySet gen_queries(const index::CorpusIndex& index, std::size_t n, QueryKind kind, std::uint64_t seed);

/// Ranked method ids for one query.
using RankedList = std::vector<std::uint32_t>;
using EngineFn = std::function<RankedList(const frontend::AnnotatedTree& query, std::size_t limit)>;

enum class EngineKind : std::uint8_t { OverlapRerank, TfidfFeature, TfidfKeyword };
std::string to_string(EngineKind k);
EngineKind parse_engine_kind(const std::string& s);

/// Overlap search followed by reranking, or one of the TF-IDF baselines.
EngineFn make_engine(const recommend::Engine& engine, EngineKind kind, const recommend::EngineConfig& config);

/// 1-based rank of the first hit within `ranked`, or 0 if none. A hit is the
/// origin itself or a method whose features contain all of the origin's.
std::uint32_t first_hit_rank(const index::MethodCache& cache, std::uint32_t origin, const RankedList& ranked);

/// Fraction of first-hit ranks in [1, n].
double recall_at(const std::vector<std::uint32_t>& first_hits, std::size_t n);

/// Runs `engine` over every query and returns the first-hit rank of each.
std::vector<std::uint32_t> evaluate(const index::MethodCache& cache, const std::vector<BenchmarkQuery>& queries,
                                    const EngineFn& engine, std::size_t limit, unsigned workers);

struct BootstrapCi {
  double mean = 0.0;
  double stdev = 0.0;
  double half_width = 0.0;  // 1.96 * stdev / sqrt(B)
  std::size_t resamples = 0;
  bool degenerate = false;  // fewer than two resamples
};

/// Mean and confidence half-width of resampled recall values.
BootstrapCi bootstrap_ci(const std::vector<double>& resampled);

/// B recall values, each over a resample (with replacement) of the queries.
std::vector<double> bootstrap_recalls(const std::vector<std::uint32_t>& first_hits, std::size_t n, std::size_t b,
                                      std::uint64_t seed);

struct EngineResult {
  EngineKind engine = EngineKind::OverlapRerank;
  double recall1 = 0.0;
  double recall100 = 0.0;
  BootstrapCi ci1;
  BootstrapCi ci100;
};

struct RecallReport {
  QueryKind kind = QueryKind::Contiguous;
  std::uint64_t seed = 0;
  std::size_t queries = 0;
  std::size_t skipped = 0;
  std::size_t resamples = 30;
  bool empty = false;
  std::vector<EngineResult> engines;
};

struct CompareOptions {
  std::vector<EngineKind> engines{EngineKind::OverlapRerank, EngineKind::TfidfFeature, EngineKind::TfidfKeyword};
  std::size_t resamples = 30;
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

/// Runs each requested engine on the same queries.
RecallReport compare_engines(const recommend::Engine& engine, const QuerySet& queries, QueryKind kind,
                             const recommend::EngineConfig& config, const CompareOptions& options);

std::string report_to_json(const RecallReport& report);
std::string report_to_table(const RecallReport& report);

}  // namespace structrec::bench
