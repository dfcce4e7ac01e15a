#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace structrec::features {

/// Multiset stored as (key, multiplicity) pairs sorted by key.
template <class K>
class Multiset {
 public:
  using Entry = std::pair<K, std::uint32_t>;

  Multiset() = default;

  static Multiset from_items(std::vector<K> items) {
    std::sort(items.begin(), items.end());
    Multiset m;
    for (auto& k : items) {
      if (!m.entries_.empty() && m.entries_.back().first == k)
        ++m.entries_.back().second;
      else
        m.entries_.emplace_back(std::move(k), 1);
    }
    m.total_ = items.size();
    return m;
  }

  static Multiset from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end());
    Multiset m;
    for (auto& e : entries) {
      std::uint32_t c = e.second;
      if (c == 0) continue;
      if (!m.entries_.empty() && m.entries_.back().first == e.first)
        m.entries_.back().second += c;
      else
        m.entries_.push_back(std::move(e));
      m.total_ += c;
    }
    return m;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::uint64_t total() const { return total_; }
  std::size_t distinct() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::uint32_t count(const K& k) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                               [](const Entry& e, const K& key) { return e.first < key; });
    return it != entries_.end() && it->first == k ? it->second : 0;
  }

  /// Support set S(X).
  std::vector<K> support() const {
    std::vector<K> s;
    s.reserve(entries_.size());
    for (const auto& e : entries_) s.push_back(e.first);
    return s;
  }

  bool operator==(const Multiset&) const = default;

  /// Multiset sum: multiplicities add.
  friend Multiset sum(const Multiset& a, const Multiset& b) {
    return merge(a, b, [](std::uint32_t x, std::uint32_t y) { return x + y; });
  }
  /// Multiset union: maximum multiplicity.
  friend Multiset unite(const Multiset& a, const Multiset& b) {
    return merge(a, b, [](std::uint32_t x, std::uint32_t y) { return std::max(x, y); });
  }
  /// Multiset intersection: minimum multiplicity.
  friend Multiset intersect(const Multiset& a, const Multiset& b) {
    return merge(a, b, [](std::uint32_t x, std::uint32_t y) { return std::min(x, y); });
  }

  /// |A ∩ B| counted with multiplicity.
  friend std::uint64_t sim_score(const Multiset& a, const Multiset& b) {
    std::uint64_t s = 0;
    auto i = a.entries_.begin(), j = b.entries_.begin();
    while (i != a.entries_.end() && j != b.entries_.end()) {
      if (i->first < j->first) {
        ++i;
      } else if (j->first < i->first) {
        ++j;
      } else {
        s += std::min(i->second, j->second);
        ++i;
        ++j;
      }
    }
    return s;
  }

 private:
  template <class F>
  static Multiset merge(const Multiset& a, const Multiset& b, F f) {
    Multiset m;
    auto i = a.entries_.begin(), j = b.entries_.begin();
    auto emit = [&](const K& k, std::uint32_t c) {
      if (c == 0) return;
      m.entries_.emplace_back(k, c);
      m.total_ += c;
    };
    while (i != a.entries_.end() || j != b.entries_.end()) {
      if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
        emit(i->first, f(i->second, 0));
        ++i;
      } else if (i == a.entries_.end() || j->first < i->first) {
        emit(j->first, f(0, j->second));
        ++j;
      } else {
        emit(i->first, f(i->second, j->second));
        ++i;
        ++j;
      }
    }
    return m;
  }

  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

}  // namespace structrec::features
