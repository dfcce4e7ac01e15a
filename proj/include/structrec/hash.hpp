#pragma once

#include <cstdint>
#include <string_view>

namespace structrec {

// 64-bit FNV-1a. Stable across platforms and runs; used for content hashes
// and the feature dictionary.
constexpr std::uint64_t fnv1a64(std::string_view data,
                                std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct StableStringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return static_cast<std::size_t>(fnv1a64(s));
  }
};

}  // namespace structrec
