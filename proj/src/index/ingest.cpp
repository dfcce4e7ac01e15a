#include "structrec/index/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "structrec/error.hpp"
#include "structrec/hash.hpp"
#include "structrec/parallel.hpp"

namespace structrec::index {

namespace fs = std::filesystem;
using frontend::MethodSource;

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct SourceFile {
  std::string project;
  std::string path;  // generic form, relative to root
  fs::path full;
  std::string content;
  std::uint64_t hash = 0;
  bool readable = false;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + p.string());
  return ss.str();
}

}  // namespace

std::vector<MethodSource> dedup_methods(std::vector<MethodSource> methods, std::size_t* dropped) {
  std::unordered_set<std::uint64_t> seen;
  std::vector<MethodSource> out;
  out.reserve(methods.size());
  for (auto& m : methods) {
    if (!seen.insert(m.hash).second) {
      if (dropped) ++*dropped;
      continue;
    }
    out.push_back(std::move(m));
  }
  return out;
}

Corpus ingest(const fs::path& root, unsigned workers) {
  Corpus corpus;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("not a directory: " + root.string());

  std::vector<SourceFile> files;
  for (auto it = fs::recursive_directory_iterator(root, fs::directory_options::skip_permission_denied, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) {
      spdlog::warn("skipping unreadable directory entry: {}", ec.message());
      ++corpus.stats.io_errors;
      ec.clear();
      continue;
    }
    if (!it->is_regular_file(ec)) continue;
    std::string name = it->path().filename().string();
    if (!ends_with(name, kCodeExtension) && !ends_with(name, kTreeExtension)) continue;
    SourceFile f;
    f.full = it->path();
    fs::path rel = fs::relative(it->path(), root, ec);
    f.path = rel.generic_string();
    auto first = rel.begin();
    f.project = std::next(first) == rel.end() ? std::string() : first->string();
    files.push_back(std::move(f));
  }
  std::sort(files.begin(), files.end(), [](const SourceFile& a, const SourceFile& b) {
    return std::tie(a.project, a.path) < std::tie(b.project, b.path);
  });

  parallel_for(files.size(), workers, [&](std::size_t i) {
    try {
      files[i].content = read_file(files[i].full);
      files[i].hash = frontend::content_hash(files[i].content);
      files[i].readable = true;
    } catch (const IoError& e) {
      spdlog::warn("{}", e.what());
    }
  });

  // Project hash over the sorted file hashes.
  std::map<std::string, std::vector<std::size_t>> by_project;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!files[i].readable) {
      ++corpus.stats.io_errors;
      continue;
    }
    by_project[files[i].project].push_back(i);
  }
  std::unordered_set<std::uint64_t> seen_projects, seen_files;
  std::vector<std::size_t> kept;
  for (auto& [project, idx] : by_project) {
    std::vector<std::uint64_t> hashes;
    for (auto i : idx) hashes.push_back(files[i].hash);
    std::sort(hashes.begin(), hashes.end());
    std::uint64_t h = fnv1a64("");
    for (auto fh : hashes) {
      std::string_view bytes(reinterpret_cast<const char*>(&fh), sizeof fh);
      h = fnv1a64(bytes, h);
    }
    if (!seen_projects.insert(h).second) {
      ++corpus.stats.duplicate_projects;
      continue;
    }
    ++corpus.stats.projects;
    for (auto i : idx) {
      if (!seen_files.insert(files[i].hash).second) {
        ++corpus.stats.duplicate_files;
        continue;
      }
      kept.push_back(i);
    }
  }
  corpus.stats.files = kept.size();

  std::vector<std::vector<MethodSource>> per_file(kept.size());
  std::vector<std::size_t> failures(kept.size(), 0);
  parallel_for(kept.size(), workers, [&](std::size_t k) {
    SourceFile& f = files[kept[k]];
    if (ends_with(f.path, kTreeExtension)) {
      try {
        frontend::import_tree(f.content);
      } catch (const Error& e) {
        spdlog::warn("{}: {}", f.path, e.what());
        ++failures[k];
        return;
      }
      MethodSource m;
      m.project = f.project;
      m.path = f.path;
      std::string stem = fs::path(f.path).filename().string();
      m.name = stem.substr(0, stem.size() - std::string_view(kTreeExtension).size());
      m.text = f.content;
      m.hash = f.hash;
      m.kind = frontend::SourceKind::Tree;
      per_file[k].push_back(std::move(m));
      return;
    }
    try {
      per_file[k] = frontend::methods_from_file(f.content, f.project, f.path, &failures[k]);
    } catch (const Error& e) {
      spdlog::warn("{}: {}", f.path, e.what());
      ++failures[k];
    }
  });

  std::vector<MethodSource> all;
  for (std::size_t k = 0; k < kept.size(); ++k) {
    corpus.stats.parse_failures += failures[k];
    corpus.stats.methods_found += per_file[k].size();
    for (auto& m : per_file[k]) all.push_back(std::move(m));
    files[kept[k]].content.clear();
  }
  // Already in (project, path, offset) order: files were sorted and methods
  // come out of each file in offset order.
  corpus.methods = dedup_methods(std::move(all), &corpus.stats.duplicate_methods);
  return corpus;
}

}  // namespace structrec::index
