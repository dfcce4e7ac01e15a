#include "structrec/features/dictionary.hpp"

namespace structrec::features {

FeatureDictionary& FeatureDictionary::operator=(const FeatureDictionary& other) {
  if (this == &other) return *this;
  keys_.clear();
  ids_.clear();
  ids_.reserve(other.keys_.size());
  for (const auto& k : other.keys_) intern(k);
  return *this;
}

FeatureDictionary& FeatureDictionary::operator=(FeatureDictionary&& other) noexcept {
  if (this == &other) return *this;
  // Moving a deque keeps element addresses, so the views stay valid.
  keys_ = std::move(other.keys_);
  ids_ = std::move(other.ids_);
  other.keys_.clear();
  other.ids_.clear();
  return *this;
}

FeatureId FeatureDictionary::intern(std::string_view key) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  FeatureId id = static_cast<FeatureId>(keys_.size());
  keys_.emplace_back(key);
  ids_.emplace(keys_.back(), id);
  return id;
}

std::optional<FeatureId> FeatureDictionary::find(std::string_view key) const {
  auto it = ids_.find(key);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

}  // namespace structrec::features
