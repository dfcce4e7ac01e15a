#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "structrec/hash.hpp"

namespace structrec::features {

using FeatureId = std::uint32_t;

/// Interns exact feature keys to dense ids in first-seen order.
///
/// intern() is serialized by a mutex. find() and key() take no lock and may
/// run concurrently with each other once interning has finished.
class FeatureDictionary {
 public:
  FeatureDictionary() = default;
  FeatureDictionary(const FeatureDictionary& other) { *this = other; }
  FeatureDictionary& operator=(const FeatureDictionary& other);
  FeatureDictionary(FeatureDictionary&& other) noexcept { *this = std::move(other); }
  FeatureDictionary& operator=(FeatureDictionary&& other) noexcept;

  FeatureId intern(std::string_view key);
  std::optional<FeatureId> find(std::string_view key) const;
  const std::string& key(FeatureId id) const { return keys_[id]; }
  std::size_t size() const { return keys_.size(); }

  bool operator==(const FeatureDictionary& other) const { return keys_ == other.keys_; }

 private:
  // deque keeps string addresses stable for the string_view map keys.
  std::deque<std::string> keys_;
  std::unordered_map<std::string_view, FeatureId, StableStringHash, std::equal_to<>> ids_;
  mutable std::mutex mu_;
};

}  // namespace structrec::features
