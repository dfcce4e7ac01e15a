#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace structrec::recommend {

enum class UnionMode : std::uint8_t {
  AsWritten,  // multiset sum for the pair step, set union for later steps
  Uniform,    // multiset sum for every step
};

struct EngineConfig {
  std::size_t eta1 = 1000;
  std::size_t eta2 = 100;
  double tau1 = 0.65;
  double tau2 = 1.5;
  double tau3 = 0.9;
  std::size_t topk = 5;
  UnionMode union_mode = UnionMode::AsWritten;
  bool placeholders = false;
  bool fallback = false;  // with no valid tuple, return the top N₂ member alone
  unsigned workers = 1;
  std::uint64_t seed = 42;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

std::string to_string(UnionMode m);
UnionMode parse_union_mode(const std::string& s);

}  // namespace structrec::recommend
