#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

#include "structrec/frontend/source.hpp"

namespace structrec::index {

struct IngestStats {
  std::size_t projects = 0;
  std::size_t files = 0;
  std::size_t methods_found = 0;
  std::size_t parse_failures = 0;
  std::size_t io_errors = 0;
  std::size_t duplicate_projects = 0;
  std::size_t duplicate_files = 0;
  std::size_t duplicate_methods = 0;
};

struct Corpus {
  std::vector<frontend::MethodSource> methods;  // sorted by (project, path, offset)
  IngestStats stats;
};

/// File extensions picked up by ingest().
inline constexpr const char* kCodeExtension = ".java";
inline constexpr const char* kTreeExtension = ".spt.json";

/// Reads every source file and interchange document below `root`. The
/// project of a file is its first path component below the root. Projects,
/// files and methods whose content hash was already seen are dropped, first
/// occurrence in (project, path, offset) order kept. Unreadable files and
/// unparseable methods are counted and skipped.
Corpus ingest(const std::filesystem::path& root, unsigned workers = 1);

/// Drops method-level duplicates from an ordered record list.
std::vector<frontend::MethodSource> dedup_methods(std::vector<frontend::MethodSource> methods,
                                                  std::size_t* dropped = nullptr);

}  // namespace structrec::index
