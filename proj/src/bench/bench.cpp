#include "structrec/bench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <json.hpp>
#include <numeric>
#include <random>
#include <stdexcept>

#include "structrec/error.hpp"
#include "structrec/frontend/lexer.hpp"
#include "structrec/frontend/parser.hpp"
#include "structrec/parallel.hpp"

namespace structrec::bench {

using frontend::Token;

std::string to_string(QueryKind k) { return k == QueryKind::Contiguous ? "contiguous" : "non-contiguous"; }

QueryKind parse_query_kind(const std::string& s) {
  if (s == "contiguous") return QueryKind::Contiguous;
  if (s == "non-contiguous") return QueryKind::NonContiguous;
  throw std::invalid_argument("unknown query kind '" + s + "'");
}

std::string to_string(EngineKind k) {
  switch (k) {
    case EngineKind::OverlapRerank: return "overlap-rerank";
    case EngineKind::TfidfFeature: return "tfidf-feature";
    case EngineKind::TfidfKeyword: return "tfidf-keyword";
  }
  return "";
}

EngineKind parse_engine_kind(const std::string& s) {
  for (auto k : {EngineKind::OverlapRerank, EngineKind::TfidfFeature, EngineKind::TfidfKeyword})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown engine '" + s + "'");
}

namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Uniform in [0, n) from a 64-bit draw; the tiny modulo bias is accepted for
// portability across standard libraries.
std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

char closer(char open) { return open == '{' ? '}' : open == '(' ? ')' : ']'; }

}  // namespace

std::vector<std::string> body_lines(const frontend::MethodSource& m) {
  if (m.kind != frontend::SourceKind::Code) return {};
  std::vector<Token> toks = frontend::tokenize(m.text);
  auto open = std::find_if(toks.begin(), toks.end(), [&](const Token& t) { return t.offset >= m.body_offset; });
  if (open == toks.end() || toks.size() < 2) return {};
  std::vector<std::string> out;
  std::size_t line_start = std::string::npos;
  std::string current;
  const Token* prev = nullptr;
  for (auto it = open + 1; it + 1 < toks.end(); ++it) {
    std::size_t start = m.text.rfind('\n', it->offset);
    start = start == std::string::npos ? 0 : start + 1;
    if (start != line_start) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      line_start = start;
    } else if (prev) {
      // Keep the source spacing unless a comment sat between the tokens.
      std::string_view gap = std::string_view(m.text).substr(prev->end(), it->offset - prev->end());
      current += is_blank(gap) ? std::string(gap) : std::string(" ");
    }
    current += it->text;
    prev = &*it;
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::optional<std::string> assemble_query(const std::vector<std::string>& lines,
                                          const std::vector<std::uint32_t>& selected) {
  std::string text;
  for (auto l : selected) {
    if (l == 0 || l > lines.size()) return std::nullopt;
    if (!text.empty()) text += '\n';
    text += lines[l - 1];
  }
  try {
    std::vector<Token> toks = frontend::tokenize(text);
    std::string out;
    std::size_t copied = 0;
    std::string open;  // unclosed brackets, innermost last
    bool has_word = false;
    for (const auto& t : toks) {
      has_word |= !t.is_keyword();
      if (!t.is_keyword() || t.text.size() != 1) continue;
      char c = t.text[0];
      if (c == '{' || c == '(' || c == '[') open.push_back(c);
      if (c != '}' && c != ')' && c != ']') continue;
      if (!open.empty()) {
        if (closer(open.back()) == c) open.pop_back();
        continue;
      }
      out.append(text, copied, t.offset - copied);
      copied = t.end();
    }
    out.append(text, copied, std::string::npos);
    // Close what the cut left open; a call closed back at statement level
    // also needs its semicolon.
    while (!open.empty()) {
      char c = closer(open.back());
      open.pop_back();
      out += c == '}' ? "\n}" : std::string(1, c);
      if (c == ')' && (open.empty() || open.back() == '{')) out += ';';
    }
    if (!has_word) return std::nullopt;
    // Lines emptied by dropped brackets go too.
    std::string kept;
    for (std::size_t pos = 0; pos <= out.size();) {
      std::size_t end = std::min(out.find('\n', pos), out.size());
      std::string_view line = std::string_view(out).substr(pos, end - pos);
      if (!is_blank(line)) {
        if (!kept.empty()) kept += '\n';
        kept += line;
      }
      pos = end + 1;
    }
    out = std::move(kept);
    std::vector<Token> repaired = frontend::tokenize(out);
    frontend::parse_snippet(repaired);
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

QuerySet gen_queries(const index::CorpusIndex& index, std::size_t n, QueryKind kind, std::uint64_t seed) {
  std::vector<std::uint32_t> eligible;
  std::vector<std::vector<std::string>> lines(index.method_count());
  for (std::uint32_t m = 0; m < index.method_count(); ++m) {
    lines[m] = body_lines(index.methods[m]);
    if (lines[m].size() >= kMinBodyLines) eligible.push_back(m);
  }
  QuerySet out;
  out.eligible = eligible.size();
  if (eligible.size() < n)
    throw InsufficientCorpusError(fmt::format("{} methods have at least {} lines, {} queries requested",
                                              eligible.size(), kMinBodyLines, n));
  std::mt19937_64 rng(seed);
  for (std::size_t i = eligible.size(); i > 1; --i) std::swap(eligible[i - 1], eligible[below(rng, i)]);

  for (std::size_t e = 0; e < eligible.size() && out.queries.size() < n; ++e) {
    std::uint32_t m = eligible[e];
    const auto& body = lines[m];
    BenchmarkQuery q;
    q.origin = m;
    q.kind = kind;
    std::optional<std::string> text;
    if (kind == QueryKind::Contiguous) {
      q.lines = {1, 2, 3, 4, 5};
      text = assemble_query(body, q.lines);
    } else {
      std::vector<std::uint32_t> pool(body.size());
      std::iota(pool.begin(), pool.end(), 1u);
      for (int attempt = 0; attempt <= kMaxResamples && !text; ++attempt) {
        for (std::size_t i = 0; i < kQueryLines; ++i) std::swap(pool[i], pool[i + below(rng, pool.size() - i)]);
        q.lines.assign(pool.begin(), pool.begin() + kQueryLines);
        std::sort(q.lines.begin(), q.lines.end());
        text = assemble_query(body, q.lines);
      }
    }
    if (!text) {
      ++out.skipped;
      continue;
    }
    q.text = std::move(*text);
    out.queries.push_back(std::move(q));
  }
  if (out.queries.size() < n)
    throw InsufficientCorpusError(
        fmt::format("only {} usable queries of {} requested ({} skipped)", out.queries.size(), n, out.skipped));
  return out;
}

EngineFn make_engine(const recommend::Engine& engine, EngineKind kind, const recommend::EngineConfig& config) {
  return [&engine, kind, config](const frontend::AnnotatedTree& query, std::size_t limit) {
    RankedList out;
    try {
      auto q = search::resolve_query(engine.index(), query);
      if (kind == EngineKind::OverlapRerank) {
        auto phase1 = search::overlap_search(engine.index(), q, config.eta1);
        for (const auto& r : rerank::rerank(engine.cache(), q, phase1)) {
          if (out.size() == limit) break;
          out.push_back(r.method);
        }
      } else {
        auto scored = kind == EngineKind::TfidfFeature ? search::tfidf_feature_search(engine.feature_model(), q, limit)
                                                       : search::tfidf_keyword_search(engine.keyword_model(), q, limit);
        for (const auto& s : scored) out.push_back(s.method);
      }
    } catch (const EmptyQueryError&) {
    } catch (const NoResultError&) {
    }
    return out;
  };
}

std::uint32_t first_hit_rank(const index::MethodCache& cache, std::uint32_t origin, const RankedList& ranked) {
  const auto& index = cache.index();
  const std::uint64_t need = index.feature_total(origin);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    std::uint32_t r = ranked[i];
    if (r == origin) return static_cast<std::uint32_t>(i + 1);
    if (index.feature_total(r) < need) continue;
    if (sim_score(cache.get(origin).bag, cache.get(r).bag) == need) return static_cast<std::uint32_t>(i + 1);
  }
  return 0;
}

double recall_at(const std::vector<std::uint32_t>& first_hits, std::size_t n) {
  if (first_hits.empty()) return 0.0;
  auto hits = std::count_if(first_hits.begin(), first_hits.end(), [&](std::uint32_t r) { return r != 0 && r <= n; });
  return static_cast<double>(hits) / static_cast<double>(first_hits.size());
}

std::vector<std::uint32_t> evaluate(const index::MethodCache& cache, const std::vector<BenchmarkQuery>& queries,
                                    const EngineFn& engine, std::size_t limit, unsigned workers) {
  std::vector<std::uint32_t> out(queries.size(), 0);
  parallel_for(queries.size(), workers, [&](std::size_t i) {
    auto tree = frontend::parse_query(queries[i].text);
    out[i] = first_hit_rank(cache, queries[i].origin, engine(tree, limit));
  });
  return out;
}

BootstrapCi bootstrap_ci(const std::vector<double>& resampled) {
  BootstrapCi ci;
  ci.resamples = resampled.size();
  if (resampled.empty()) {
    ci.degenerate = true;
    return ci;
  }
  const double b = static_cast<double>(resampled.size());
  ci.mean = std::accumulate(resampled.begin(), resampled.end(), 0.0) / b;
  if (resampled.size() < 2) {
    ci.degenerate = true;
    return ci;
  }
  // Equal values: exactly zero spread, whatever the rounding of the mean.
  if (std::adjacent_find(resampled.begin(), resampled.end(), std::not_equal_to<>()) == resampled.end()) {
    ci.mean = resampled.front();
    return ci;
  }
  double ss = 0.0;
  for (double v : resampled) ss += (v - ci.mean) * (v - ci.mean);
  ci.stdev = std::sqrt(ss / (b - 1.0));
  ci.half_width = 1.96 * ci.stdev / std::sqrt(b);
  return ci;
}

std::vector<double> bootstrap_recalls(const std::vector<std::uint32_t>& first_hits, std::size_t n, std::size_t b,
                                      std::uint64_t seed) {
  std::vector<double> out(b, 0.0);
  if (first_hits.empty()) return out;
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> sample(first_hits.size());
  for (auto& v : out) {
    for (auto& s : sample) s = first_hits[below(rng, first_hits.size())];
    v = recall_at(sample, n);
  }
  return out;
}

RecallReport compare_engines(const recommend::Engine& engine, const QuerySet& queries, QueryKind kind,
                             const recommend::EngineConfig& config, const CompareOptions& options) {
  RecallReport report;
  report.kind = kind;
  report.seed = options.seed;
  report.queries = queries.queries.size();
  report.skipped = queries.skipped;
  report.resamples = options.resamples;
  if (queries.queries.empty()) {
    report.empty = true;
    return report;
  }
  for (auto kind_ : options.engines) {
    auto hits = evaluate(engine.cache(), queries.queries, make_engine(engine, kind_, config), 100, options.workers);
    EngineResult r;
    r.engine = kind_;
    r.recall1 = recall_at(hits, 1);
    r.recall100 = recall_at(hits, 100);
    // The same seed for every engine pairs their resamples.
    r.ci1 = bootstrap_ci(bootstrap_recalls(hits, 1, options.resamples, options.seed));
    r.ci100 = bootstrap_ci(bootstrap_recalls(hits, 100, options.resamples, options.seed));
    report.engines.push_back(r);
  }
  return report;
}

namespace {

nlohmann::json ci_json(const BootstrapCi& ci) {
  return {{"mean", ci.mean},
          {"stdev", ci.stdev},
          {"half_width", ci.half_width},
          {"resamples", ci.resamples},
          {"degenerate", ci.degenerate}};
}

std::string percent(double v) { return fmt::format("{:.1f}%", 100.0 * v); }

std::string with_ci(double v, const BootstrapCi& ci) {
  return ci.degenerate ? percent(v) + " (n/a)" : fmt::format("{} ± {:.2f}%", percent(v), 100.0 * ci.half_width);
}

}  // namespace

std::string report_to_json(const RecallReport& report) {
  nlohmann::json engines = nlohmann::json::array();
  for (const auto& e : report.engines)
    engines.push_back({{"engine", to_string(e.engine)},
                       {"recall_at_1", e.recall1},
                       {"recall_at_100", e.recall100},
                       {"ci_at_1", ci_json(e.ci1)},
                       {"ci_at_100", ci_json(e.ci100)}});
  nlohmann::json doc = {{"kind", to_string(report.kind)},
                        {"seed", report.seed},
                        {"queries", report.queries},
                        {"skipped", report.skipped},
                        {"resamples", report.resamples},
                        {"empty", report.empty},
                        {"engines", engines}};
  return doc.dump(2) + "\n";
}

std::string report_to_table(const RecallReport& report) {
  std::string out = fmt::format("{} queries: {} (skipped {}), seed {}, {} bootstrap resamples\n",
                                to_string(report.kind), report.queries, report.skipped, report.seed,
                                report.resamples);
  if (report.empty) return out + "no queries\n";
  out += fmt::format("{:<16} {:>20} {:>20}\n", "engine", "Recall@1", "Recall@100");
  for (const auto& e : report.engines)
    out += fmt::format("{:<16} {:>20} {:>20}\n", to_string(e.engine), with_ci(e.recall1, e.ci1),
                       with_ci(e.recall100, e.ci100));
  return out;
}

}  // namespace structrec::bench
