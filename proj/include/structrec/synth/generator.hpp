#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace structrec::synth {

/// Parameters of a generated corpus. Methods are assembled from a fixed set
/// of idioms drawn with Zipf frequencies and filled with random names and
/// literals; the count includes confusers and twins but not duplicates.
struct SynthOptions {
  std::size_t methods = 10000;
  std::uint64_t seed = 42;
  std::size_t methods_per_file = 8;
  std::size_t files_per_project = 25;
  double confuser_rate = 0.25;  // short methods copying another's first lines
  double twin_rate = 0.002;     // copies with locals renamed
  std::size_t duplicate_projects = 1;
  std::size_t duplicate_files = 10;
  std::size_t duplicate_methods = 20;
};

struct SynthStats {
  std::size_t methods = 0;
  std::size_t confusers = 0;
  std::size_t twins = 0;
  std::size_t projects = 0;
  std::size_t files = 0;
  std::size_t duplicate_projects = 0;
  std::size_t duplicate_files = 0;
  std::size_t duplicate_methods = 0;
};

struct GeneratedFile {
  std::string path;  // relative, first component is the project
  std::string text;
};

struct SynthCorpus {
  std::vector<GeneratedFile> files;
  SynthStats stats;
};

/// Deterministic in the options; the RNG is portable across standard
/// libraries.
SynthCorpus generate_corpus(const SynthOptions& options);

/// Writes every file below `root`, creating directories.
void write_corpus(const SynthCorpus& corpus, const std::filesystem::path& root);

}  // namespace structrec::synth
