// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fmt/format.h>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "structrec/bench/bench.hpp"
#include "structrec/error.hpp"
#include "structrec/index/ingest.hpp"
#include "structrec/recommend/pipeline.hpp"
#include "structrec/synth/generator.hpp"
#include "temp_dir.hpp"

using namespace structrec;
using namespace structrec::testing;
using bench::QueryKind;
using Clock = std::chrono::steady_clock;

namespace {

const std::filesystem::path kFixtureCorpus = std::filesystem::path(STRUCTREC_TEST_DATA) / "corpus";

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  %d %s: %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

index::CorpusIndex index_from_disk(std::size_t methods, std::uint64_t seed, const std::filesystem::path& dir,
                                   unsigned workers) {
  synth::SynthOptions o;
  o.methods = methods;
  o.seed = seed;
  synth::write_corpus(synth::generate_corpus(o), dir);
  index::BuildOptions opts;
  opts.workers = workers;
  return index::build_index(index::ingest(dir, workers).methods, opts);
}

// 1. Full-body queries retrieve their origin at rank 1 with similarity 1.
void self_retrieval(const recommend::Engine& engine) {
  auto start = Clock::now();
  const auto& idx = engine.index();
  std::mt19937_64 rng(7);
  std::vector<std::uint32_t> ids(idx.method_count());
  for (std::uint32_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::min<std::size_t>(500, ids.size()));
  std::size_t origin_first = 0, twin_first = 0, bad = 0;
  for (auto origin : ids) {
    auto q = search::resolve_query(idx, frontend::load_method(idx.methods[origin]));
    auto reranked = rerank::rerank(engine.cache(), q, search::overlap_search(idx, q, 1000));
    if (reranked.empty() || reranked[0].normalized != 1.0) {
      ++bad;
      continue;
    }
    auto top = reranked[0].method;
    if (top == origin)
      ++origin_first;
    else if (engine.cache().get(top).bag == engine.cache().get(origin).bag)
      ++twin_first;
    else
      ++bad;
  }
  double secs = seconds_since(start);
  report(1, "self-retrieval", bad == 0 && ids.size() == 500 && secs < 300,
         fmt::format("{}/{} at rank 1 with similarity 1.0 ({} origin, {} feature-identical twin), {:.1f}s",
                     origin_first + twin_first, ids.size(), origin_first, twin_first, secs));
}

const bench::EngineResult& result_of(const bench::RecallReport& r, bench::EngineKind k) {
  for (const auto& e : r.engines)
    if (e.engine == k) return e;
  throw std::logic_error("engine missing from report");
}

// 2, 3 and 4 from one benchmark run per query kind.
void recall(const recommend::Engine& engine) {
  std::map<QueryKind, bench::RecallReport> reports;
  for (auto kind : {QueryKind::Contiguous, QueryKind::NonContiguous}) {
    auto start = Clock::now();
    auto qs = bench::gen_queries(engine.index(), 1000, kind, 42);
    bench::CompareOptions opts;
    opts.resamples = 30;
    reports[kind] = bench::compare_engines(engine, qs, kind, {}, opts);
    std::printf("      %s", bench::report_to_table(reports[kind]).c_str());
    std::printf("      evaluated in %.1fs\n", seconds_since(start));
  }
  using bench::EngineKind;
  const auto& c = result_of(reports[QueryKind::Contiguous], EngineKind::OverlapRerank);
  const auto& n = result_of(reports[QueryKind::NonContiguous], EngineKind::OverlapRerank);
  bool full = reports[QueryKind::Contiguous].queries == 1000 && reports[QueryKind::NonContiguous].queries == 1000;
  report(2, "recall", full && c.recall1 >= 0.95 && c.recall100 >= 0.995 && n.recall1 >= 0.93 && n.recall100 >= 0.99,
         fmt::format("contiguous R@1 {:.3f} R@100 {:.3f}; non-contiguous R@1 {:.3f} R@100 {:.3f}", c.recall1,
                     c.recall100, n.recall1, n.recall100));

  bool ordered = true;
  std::string detail;
  for (auto kind : {QueryKind::Contiguous, QueryKind::NonContiguous}) {
    const auto& r = reports[kind];
    const auto& ours = result_of(r, EngineKind::OverlapRerank);
    for (auto base : {EngineKind::TfidfFeature, EngineKind::TfidfKeyword}) {
      const auto& b = result_of(r, base);
      ordered = ordered && ours.recall1 > b.recall1 && b.recall100 >= 0.9;
      detail += fmt::format("{}{} {}: R@1 {:.3f} vs {:.3f}, R@100 {:.3f}", detail.empty() ? "" : "; ",
                            bench::to_string(kind), bench::to_string(base), ours.recall1, b.recall1, b.recall100);
    }
  }
  report(3, "baseline ordering", ordered, detail);

  // Hand-computed: mean 0.98857142857142857, sample stdev over 6 degrees of
  // freedom 0.01107334852784142, half-width 1.96 * stdev / sqrt(7).
  auto hand = bench::bootstrap_ci({0.99, 1.00, 0.98, 0.97, 1.00, 0.995, 0.985});
  bool formula = std::abs(hand.mean - 0.9885714285714285) < 1e-12 &&
                 std::abs(hand.stdev - 0.011073348527841424) < 1e-12 &&
                 std::abs(hand.half_width - 0.008203251387915247) < 1e-12;
  bool narrow = c.recall1 < 0.95 || (c.ci1.resamples == 30 && c.ci1.half_width <= 0.01);
  report(4, "bootstrap interval", formula && narrow,
         fmt::format("contiguous R@1 half-width {:.4f} over B={}; formula {}", c.ci1.half_width, c.ci1.resamples,
                     formula ? "matches" : "differs"));
}

std::string render_kept(const frontend::SimplifiedParseTree& t, const std::vector<std::uint32_t>& r) {
  return recommend::render(t, rerank::retained_nodes(t, r), {}).text;
}

// 5. Greedy pruning against the exhaustive optimum, and the worked examples.
void pruning() {
  std::mt19937 rng(2024);
  int instances = 0, exact = 0, below = 0;
  double worst = 1.0;
  while (instances < 300) {
    features::FeatureDictionary dict;
    auto m = encode(dict, random_program(rng));
    if (m.leaves.size() > 8) continue;
    auto other = encode(dict, random_program(rng));
    std::vector<features::FeatureId> items;
    for (const auto& leaf : m.leaves)
      for (auto f : leaf)
        if (rng() % 3 == 0) items.push_back(f);
    for (const auto& leaf : other.leaves)
      for (auto f : leaf)
        if (rng() % 2 == 0) items.push_back(f);
    for (int k = rng() % 4; k > 0; --k) items.push_back(dict.intern("noise" + std::to_string(rng() % 5)));
    auto target = IdBag::from_items(items);
    auto got = rerank::prune(target, m.leaves).score;
    auto opt = brute_optimum(target, m.leaves);
    if (opt > 0) worst = std::min(worst, double(got) / double(opt));
    below += double(got) < 0.9 * double(opt);
    exact += got == opt;
    ++instances;
  }

  features::FeatureDictionary dict;
  auto q1 = encode(dict, "x = 1; y = 2;");
  auto m1 = encode(dict, "y = 2; z = 3;");
  auto ex1 = render_kept(m1.tree.tree, rerank::prune(q1.bag, m1.leaves).retained);
  auto q2 = encode(dict, "x = 1; if (y > 1) if (z < 0) w = 4;");
  auto m2 = encode(dict, "if (z < 0) if (y > 1) w = 4; v = 10;");
  auto ex2 = render_kept(m2.tree.tree, rerank::prune(q2.bag, m2.leaves).retained);
  bool examples = ex1 == "y = 2;" && ex2 == "if (z < 0) if (y > 1) w = 4;";
  report(5, "pruning", below == 0 && exact >= 0.8 * instances && examples,
         fmt::format("{} trees, exact {} ({:.1f}%), worst ratio {:.3f}; examples \"{}\" and \"{}\"", instances, exact,
                     100.0 * exact / instances, worst, ex1, ex2));
}

double method_jaccard(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::set<std::uint32_t> sa(a.begin(), a.end()), sb(b.begin(), b.end()), all = sa;
  all.insert(sb.begin(), sb.end());
  std::size_t common = sa.size() + sb.size() - all.size();
  return all.empty() ? 0.0 : double(common) / double(all.size());
}

struct ValidityTally {
  std::size_t queries = 0, answered = 0, recs = 0, clustered = 0, violations = 0;
};

// Recomputes every emitted tuple from the members' features.
void check_query(const recommend::Engine& engine, const frontend::AnnotatedTree& query, ValidityTally& t) {
  ++t.queries;
  recommend::PipelineTrace trace;
  std::vector<recommend::Recommendation> recs;
  try {
    recs = recommend::recommend(engine, query, recommend::EngineConfig{}, &trace);
  } catch (const NoResultError&) {
    return;
  } catch (const EmptyQueryError&) {
    return;
  }
  t.answered += !recs.empty();
  t.recs += recs.size();
  t.violations += recs.size() > 5;
  std::map<std::uint32_t, const rerank::RerankedCandidate*> by_method;
  for (const auto& r : trace.reranked) by_method[r.method] = &r;
  for (const auto& rec : recs) {
    t.clustered += rec.methods.size() > 1;
    std::vector<Bag> full, pruned;
    for (auto m : rec.methods) {
      full.push_back(to_bag(engine.cache().get(m).bag));
      pruned.push_back(to_bag(by_method.at(m)->pruned.features));
    }
    std::vector<std::uint32_t> all(full.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    auto o = oracle_score(full, pruned, all);
    t.violations += rec.fallback || !(o.l > 1.5 && o.s > 0.9) || o.cs != rec.tuple.cs || o.csq != rec.tuple.csq;
  }
  for (std::size_t a = 0; a < recs.size(); ++a)
    for (std::size_t b = a + 1; b < recs.size(); ++b)
      t.violations += method_jaccard(recs[a].methods, recs[b].methods) > 0.5;
}

// 6. Validity of emitted recommendations and cluster growth.
void validity(const recommend::Engine& synthetic) {
  ValidityTally t;
  auto fixture_index = index::build_index(index::ingest(kFixtureCorpus).methods);
  recommend::Engine fixture(fixture_index);
  for (const char* q :
       {"InputStream input = manager.open(fileName);\nBitmap image = BitmapFactory.decodeStream(input);\n",
        "if (view instanceof ViewGroup) {\n"
        "  for (int i = 0; i < ((ViewGroup) view).getChildCount(); i++) {\n"
        "    View innerView = ((ViewGroup) view).getChildAt(i);\n  }\n}\n",
        "int total = 0;\nfor (int i = 0; i < values.length; i++) {\n}"})
    check_query(fixture, frontend::parse_query(q), t);
  for (auto kind : {QueryKind::Contiguous, QueryKind::NonContiguous})
    for (const auto& q : bench::gen_queries(synthetic.index(), 150, kind, 99).queries)
      check_query(synthetic, frontend::parse_query(q.text), t);

  std::mt19937 rng(31);
  int matched = 0;
  const int trials = 50;
  for (int trial = 0; trial < trials; ++trial) {
    auto inst = random_instance(rng, 5 + rng() % 26);
    auto n2 = inst.n2();
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& c : recommend::grow_clusters(n2, {1.5, 0.9})) got.insert(c.indices);
    matched += got == oracle_clusters(inst, 1.5, 0.9);
  }
  report(6, "recommendation validity", t.violations == 0 && t.clustered > 0 && matched == trials,
         fmt::format("{} queries, {} answered, {} recommendations ({} clustered), {} violations; cluster growth "
                     "matches enumeration on {}/{} instances",
                     t.queries, t.answered, t.recs, t.clustered, t.violations, matched, trials));
}

// 7. Mean end-to-end recommend latency on a 100k-method corpus.
void latency() {
  TempDir dir("structrec-accept-100k");
  auto build_start = Clock::now();
  auto idx = index_from_disk(100000, 42, dir.path() / "corpus", 1);
  index::save_index(idx, dir.path() / "index.bin");
  double build_secs = seconds_since(build_start);
  auto loaded = index::load_index(dir.path() / "index.bin");
  recommend::Engine engine(loaded);
  auto qs = bench::gen_queries(loaded, 20, QueryKind::Contiguous, 5);
  double total = 0.0, worst = 0.0;
  for (const auto& q : qs.queries) {
    auto start = Clock::now();
    recommend::EngineConfig config;
    std::vector<recommend::Recommendation> recs;
    try {
      recs = recommend::recommend(engine, frontend::parse_query(q.text), config);
    } catch (const NoResultError&) {
    }
    auto doc = recommend::recommendations_to_json(engine, recs, config);
    double secs = seconds_since(start);
    total += secs;
    worst = std::max(worst, secs);
  }
  double mean = total / double(qs.queries.size());
  report(7, "latency", mean < 5.0,
         fmt::format("{} methods, mean {:.3f}s, worst {:.3f}s over {} queries (index built in {:.1f}s)",
                     loaded.method_count(), mean, worst, qs.queries.size(), build_secs));
}

// 8. A second build from the same corpus seed gives identical artifacts.
void determinism(const index::CorpusIndex& first, const std::string& first_bytes) {
  TempDir dir("structrec-accept-again");
  auto second = index_from_disk(10000, 42, dir.path() / "corpus", 2);
  auto second_bytes = index::serialize_index(second);
  auto c1 = index::index_checksum(first_bytes), c2 = index::index_checksum(second_bytes);

  recommend::Engine e1(first), e2(second);
  auto bench_json = [](const recommend::Engine& e) {
    auto qs = bench::gen_queries(e.index(), 200, QueryKind::NonContiguous, 42);
    return bench::report_to_json(bench::compare_engines(e, qs, QueryKind::NonContiguous, {}, {}));
  };
  bool same_bench = bench_json(e1) == bench_json(e2);

  std::size_t docs = 0, same_docs = 0;
  for (const auto& q : bench::gen_queries(first, 20, QueryKind::Contiguous, 3).queries) {
    auto doc = [&](const recommend::Engine& e) {
      recommend::EngineConfig config;
      std::vector<recommend::Recommendation> recs;
      try {
        recs = recommend::recommend(e, frontend::parse_query(q.text), config);
      } catch (const NoResultError&) {
      }
      return recommend::recommendations_to_json(e, recs, config);
    };
    ++docs;
    same_docs += doc(e1) == doc(e2);
  }
  bool same_index = c1 == c2 && first_bytes == second_bytes;
  report(8, "determinism", same_index && same_bench && same_docs == docs,
         fmt::format("checksums {:08x} / {:08x}, index bytes {}, bench report {}, {}/{} recommendation documents "
                     "identical",
                     c1, c2, same_index ? "identical" : "differ", same_bench ? "identical" : "differs", same_docs,
                     docs));
}

}  // namespace

int main() {
  try {
    TempDir dir("structrec-accept-10k");
    auto start = Clock::now();
    auto idx = index_from_disk(10000, 42, dir.path() / "corpus", 1);
    auto bytes = index::serialize_index(idx);
    std::printf("      corpus: %zu methods indexed in %.1fs\n", idx.method_count(), seconds_since(start));
    recommend::Engine engine(idx);

    self_retrieval(engine);
    recall(engine);
    pruning();
    validity(engine);
    latency();
    determinism(idx, bytes);
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance run aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s\n", failures == 0 ? "all criteria pass" : fmt::format("{} criteria fail", failures).c_str());
  return failures == 0 ? 0 : 1;
}
