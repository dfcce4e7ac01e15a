#include <CLI11.hpp>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <spdlog/spdlog.h>

#include "structrec/bench/bench.hpp"
#include "structrec/cli/cli.hpp"
#include "structrec/error.hpp"
#include "structrec/frontend/source.hpp"
#include "structrec/index/ingest.hpp"

namespace structrec::cli {

using recommend::EngineConfig;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return ss.str();
}

// Reads a file, or the input stream for "-" or no path.
std::string read_input(const std::string& path, std::istream& in) {
  if (!path.empty() && path != "-") return read_file(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Engine flags shared by recommend, bench and serve. A config file is
// applied first; flags given on the command line win.
struct ConfigFlags {
  EngineConfig values;
  std::string file;
  std::string union_mode;
  std::vector<CLI::Option*> given;
  CLI::Option *eta1{}, *eta2{}, *tau1{}, *tau2{}, *tau3{}, *topk{}, *mode{}, *placeholders{}, *fallback{}, *workers{}, *seed{};

  void add(CLI::App* cmd) {
    cmd->add_option("--config", file, "Config file of key = value lines");
    eta1 = cmd->add_option("--eta1", values.eta1, "Phase I candidates (default 1000)");
    eta2 = cmd->add_option("--eta2", values.eta2, "Reranked members considered for clustering (default 100)");
    tau1 = cmd->add_option("--tau1", values.tau1, "Minimum normalized reranked similarity (default 0.65)");
    tau2 = cmd->add_option("--tau2", values.tau2, "Minimum cs/csq of a cluster (default 1.5)");
    tau3 = cmd->add_option("--tau3", values.tau3, "Minimum query coverage of a cluster (default 0.9)");
    topk = cmd->add_option("--topk", values.topk, "Recommendations returned (default 5)");
    mode = cmd->add_option("--union-mode", union_mode, "Intersection union: as-written or uniform");
    placeholders = cmd->add_flag("--placeholders", values.placeholders, "Mark dropped code with placeholders");
    fallback = cmd->add_flag("--fallback", values.fallback, "Without a valid cluster, return the best match alone");
    workers = cmd->add_option("--workers", values.workers, "Worker threads");
    seed = cmd->add_option("--seed", values.seed, "RNG seed (default 42)");
  }

  EngineConfig resolve() const {
    EngineConfig c;
    if (!file.empty()) apply_config_text(read_file(file), c);
    if (eta1->count()) c.eta1 = values.eta1;
    if (eta2->count()) c.eta2 = values.eta2;
    if (tau1->count()) c.tau1 = values.tau1;
    if (tau2->count()) c.tau2 = values.tau2;
    if (tau3->count()) c.tau3 = values.tau3;
    if (topk->count()) c.topk = values.topk;
    if (mode->count()) c.union_mode = recommend::parse_union_mode(union_mode);
    if (placeholders->count()) c.placeholders = values.placeholders;
    if (fallback->count()) c.fallback = values.fallback;
    if (workers->count()) c.workers = values.workers;
    if (seed->count()) c.seed = values.seed;
    c.validate();
    return c;
  }
};

std::string index_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kIndexEnv); env && *env) return env;
  throw CLI::ValidationError("--index", std::string("no index given and ") + kIndexEnv + " is not set");
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

int cmd_index(const std::string& root, const std::string& output, unsigned workers, std::ostream& out) {
  auto start = std::chrono::steady_clock::now();
  auto corpus = index::ingest(root, workers);
  const auto st = corpus.stats;
  index::BuildOptions opts;
  opts.workers = workers;
  auto idx = index::build_index(std::move(corpus.methods), opts);
  std::string bytes = index::serialize_index(idx);
  {
    std::ofstream f(output, std::ios::binary);
    if (!f || !f.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
      throw IoError("cannot write " + output);
  }
  out << fmt::format("methods {} ({} found, {} parse failures)\n", idx.method_count(), st.methods_found,
                     st.parse_failures)
      << fmt::format("features {}, words {}\n", idx.features.size(), idx.words.size())
      << fmt::format("projects {}, files {}\n", st.projects, st.files)
      << fmt::format("duplicates dropped: projects {}, files {}, methods {}\n", st.duplicate_projects,
                     st.duplicate_files, st.duplicate_methods)
      << fmt::format("unreadable files {}\n", st.io_errors)
      << fmt::format("checksum {:08x}\n", index::index_checksum(bytes))
      << fmt::format("elapsed {:.2f}s\n", seconds_since(start));
  return kOk;
}

int cmd_recommend(const std::string& index_file, const std::string& query_file, const EngineConfig& config,
                  const std::string& format, std::istream& in, std::ostream& out) {
  auto query = read_query(read_input(query_file, in));
  auto idx = index::load_index(index_path(index_file));
  recommend::Engine engine(idx);
  auto outcome = run_recommend(engine, query, config);
  if (format == "json")
    out << outcome.document;
  else if (outcome.recs.empty())
    out << "no recommendations\n";
  else
    out << recommendations_to_text(engine, outcome.recs, config);
  return outcome.exit_code;
}

int cmd_bench(const std::string& index_file, const std::string& kind, std::size_t n, std::size_t resamples,
              const std::vector<std::string>& engines, const EngineConfig& config, const std::string& format,
              std::ostream& out) {
  auto idx = index::load_index(index_path(index_file));
  recommend::Engine engine(idx);
  bench::CompareOptions opts;
  opts.resamples = resamples;
  opts.seed = config.seed;
  opts.workers = config.workers;
  if (!engines.empty()) {
    opts.engines.clear();
    for (const auto& e : engines) opts.engines.push_back(bench::parse_engine_kind(e));
  }
  std::vector<bench::QueryKind> kinds;
  if (kind == "both")
    kinds = {bench::QueryKind::Contiguous, bench::QueryKind::NonContiguous};
  else
    kinds = {bench::parse_query_kind(kind)};
  nlohmann::json reports = nlohmann::json::array();
  for (auto k : kinds) {
    auto start = std::chrono::steady_clock::now();
    auto queries = bench::gen_queries(idx, n, k, config.seed);
    auto report = bench::compare_engines(engine, queries, k, config, opts);
    spdlog::info("{} queries evaluated in {:.1f}s", bench::to_string(k), seconds_since(start));
    if (format == "json")
      reports.push_back(nlohmann::json::parse(bench::report_to_json(report)));
    else
      out << bench::report_to_table(report) << "\n";
  }
  if (format == "json") out << nlohmann::json{{"reports", reports}}.dump(2) << "\n";
  return kOk;
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

int cmd_serve(const std::string& index_file, const std::string& host, int port, const EngineConfig& config,
              std::ostream& out) {
  auto idx = index::load_index(index_path(index_file));
  recommend::Engine engine(idx);
  Service service(engine, config);
  int bound = service.bind(host, port);
  out << fmt::format("listening on {}:{} ({} methods)\n", host, bound, idx.method_count()) << std::flush;
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.listen();
  g_service = nullptr;
  return kOk;
}

int cmd_export(const std::string& file, std::istream& in, std::ostream& out) {
  auto tree = frontend::parse_query(read_input(file, in));
  out << frontend::export_tree(tree.tree, tree.vars) << "\n";
  return kOk;
}

int cmd_import(const std::string& file, std::istream& in, std::ostream& out) {
  auto tree = frontend::import_tree(read_input(file, in));
  if (tree.tree.root() != frontend::kNoNode) out << recommend::render(tree.tree, {}, {}).text << "\n";
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural code search and snippet recommendation"};
  app.require_subcommand(1);

  std::string corpus_root, output, index_file, query_file, format = "text", kind = "both", host = "127.0.0.1";
  std::string tree_file;
  unsigned index_workers = 1;
  std::size_t bench_n = 1000, resamples = 30;
  std::vector<std::string> engines;
  int port = 8080;
  ConfigFlags rec_flags, bench_flags, serve_flags;

  auto* index_cmd = app.add_subcommand("index", "Build an index from a corpus directory");
  index_cmd->add_option("corpus", corpus_root, "Corpus root; each top-level directory is a project")->required();
  index_cmd->add_option("-o,--output", output, "Index file to write")->required();
  index_cmd->add_option("--workers", index_workers, "Worker threads");

  auto* rec_cmd = app.add_subcommand("recommend", "Recommend snippets for a query");
  rec_cmd->add_option("query", query_file, "Query file: source or tree document ('-' or none: stdin)");
  rec_cmd->add_option("--index", index_file, std::string("Index file (default $") + kIndexEnv + ")");
  rec_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  rec_flags.add(rec_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Recall of the search engines on generated queries");
  bench_cmd->add_option("--index", index_file, std::string("Index file (default $") + kIndexEnv + ")");
  bench_cmd->add_option("--kind", kind, "contiguous, non-contiguous or both")
      ->check(CLI::IsMember({"contiguous", "non-contiguous", "both"}));
  bench_cmd->add_option("-n,--queries", bench_n, "Queries per kind (default 1000)");
  bench_cmd->add_option("--resamples", resamples, "Bootstrap resamples (default 30)");
  bench_cmd->add_option("--engines", engines, "Subset of overlap-rerank, tfidf-feature, tfidf-keyword");
  bench_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  bench_flags.add(bench_cmd);

  auto* serve_cmd = app.add_subcommand("serve", "Serve recommendations over HTTP");
  serve_cmd->add_option("--index", index_file, std::string("Index file (default $") + kIndexEnv + ")");
  serve_cmd->add_option("--host", host, "Bind address (default 127.0.0.1)");
  serve_cmd->add_option("--port", port, "Port (default 8080, 0 picks one)");
  serve_flags.add(serve_cmd);

  auto* export_cmd = app.add_subcommand("export-tree", "Print the tree document of a source snippet");
  export_cmd->add_option("source", tree_file, "Source file ('-' or none: stdin)");
  auto* import_cmd = app.add_subcommand("import-tree", "Validate a tree document and print its source");
  import_cmd->add_option("document", tree_file, "Tree document ('-' or none: stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (*index_cmd) return cmd_index(corpus_root, output, index_workers, out);
    if (*rec_cmd) return cmd_recommend(index_file, query_file, rec_flags.resolve(), format, in, out);
    if (*bench_cmd)
      return cmd_bench(index_file, kind, bench_n, resamples, engines, bench_flags.resolve(), format, out);
    if (*serve_cmd) return cmd_serve(index_file, host, port, serve_flags.resolve(), out);
    if (*export_cmd) return cmd_export(tree_file, in, out);
    if (*import_cmd) return cmd_import(tree_file, in, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "error: index: " << e.what() << "\n";
    return kIndexFormat;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kParse;
  } catch (const LexError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kParse;
  } catch (const SchemaError& e) {
    err << "error: parse: " << e.what() << "\n";
    return kParse;
  } catch (const InsufficientCorpusError& e) {
    err << "error: " << e.what() << "\n";
    return kEmptyResult;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace structrec::cli
