#pragma once

// Independent oracles shared by the unit tests and the acceptance run.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "structrec/features/dictionary.hpp"
#include "structrec/features/features.hpp"
#include "structrec/frontend/source.hpp"
#include "structrec/recommend/cluster.hpp"
#include "structrec/rerank/prune.hpp"

namespace structrec::testing {

using recommend::ClusterMember;
using rerank::IdBag;
using rerank::LeafIds;

struct Encoded {
  frontend::AnnotatedTree tree;
  LeafIds leaves;
  IdBag bag;
};

// Feature ids from a dictionary shared by one test.
inline Encoded encode(features::FeatureDictionary& dict, const std::string& text) {
  Encoded e{frontend::parse_query(text), {}, {}};
  std::vector<features::FeatureId> all;
  for (const auto& keys : features::leaf_feature_keys(e.tree.tree, e.tree.vars)) {
    std::vector<features::FeatureId> ids;
    for (const auto& k : keys) ids.push_back(dict.intern(k));
    all.insert(all.end(), ids.begin(), ids.end());
    e.leaves.push_back(std::move(ids));
  }
  e.bag = IdBag::from_items(all);
  return e;
}

// Independent exhaustive optimum.
inline std::uint64_t brute_optimum(const IdBag& target, const LeafIds& leaves) {
  std::uint64_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << leaves.size()); ++mask) {
    std::vector<features::FeatureId> items;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      if (mask >> i & 1) items.insert(items.end(), leaves[i].begin(), leaves[i].end());
    best = std::max(best, sim_score(target, IdBag::from_items(items)));
  }
  return best;
}

inline std::string random_program(std::mt19937& rng) {
  static const char* names[] = {"a", "b", "c", "d"};
  static const char* nums[] = {"0", "1", "2"};
  auto pick = [&](auto& arr) { return std::string(arr[rng() % std::size(arr)]); };
  auto atom = [&] { return rng() % 2 ? pick(names) : pick(nums); };
  std::string s;
  int stmts = 1 + rng() % 3;
  for (int i = 0; i < stmts; ++i) {
    switch (rng() % 4) {
      case 0: s += pick(names) + " = " + atom() + ";"; break;
      case 1: s += "f(" + atom() + ");"; break;
      case 2: s += "if (" + pick(names) + " > " + atom() + ") " + pick(names) + " = " + atom() + ";"; break;
      default: s += pick(names) + " = " + atom() + " + " + atom() + ";"; break;
    }
  }
  return s;
}

// Naive multiset as a map, for oracles.
using Bag = std::map<std::uint32_t, std::uint32_t>;

inline Bag to_bag(const IdBag& b) {
  Bag m;
  for (const auto& [k, c] : b.entries()) m[k] = c;
  return m;
}

inline std::uint64_t meet_total(const std::vector<const Bag*>& bags) {
  std::uint64_t total = 0;
  for (const auto& [k, c] : *bags[0]) {
    std::uint32_t m = c;
    for (std::size_t i = 1; i < bags.size(); ++i) {
      auto it = bags[i]->find(k);
      m = std::min(m, it == bags[i]->end() ? 0u : it->second);
    }
    total += m;
  }
  return total;
}

struct Instance {
  std::vector<IdBag> full, pruned;
  std::vector<ClusterMember> n2() const {
    std::vector<ClusterMember> out;
    for (std::size_t i = 0; i < full.size(); ++i) out.push_back({&full[i], &pruned[i]});
    return out;
  }
};

// Members drawn around a few prototypes so that many tuples are valid.
inline Instance random_instance(std::mt19937& rng, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> protos(1 + rng() % 3);
  for (auto& p : protos)
    for (int k = 0; k < 40; ++k) p.push_back(rng() % 30);
  std::vector<std::uint32_t> query;
  for (int k = 0; k < 12; ++k) query.push_back(100 + rng() % 10);
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> full, pruned;
    for (auto f : protos[rng() % protos.size()])
      if (rng() % 10 != 0) full.push_back(f);
    for (auto f : query)
      if (rng() % 20 != 0) {
        full.push_back(f);
        pruned.push_back(f);
      }
    for (int k = rng() % 5; k > 0; --k) full.push_back(rng() % 60);
    inst.full.push_back(IdBag::from_items(full));
    inst.pruned.push_back(IdBag::from_items(pruned));
  }
  return inst;
}

struct Oracle {
  std::uint64_t cs, csq;
  double l, s;
};

inline Oracle oracle_score(const std::vector<Bag>& full, const std::vector<Bag>& pruned,
                           const std::vector<std::uint32_t>& t) {
  std::vector<const Bag*> f, p;
  for (auto i : t) {
    f.push_back(&full[i]);
    p.push_back(&pruned[i]);
  }
  Oracle o{meet_total(f), meet_total(p), 0, 0};
  std::uint64_t first = 0;
  for (const auto& [k, c] : pruned[t[0]]) first += c;
  o.l = o.csq ? double(o.cs) / double(o.csq) : 0.0;
  o.s = first ? double(o.csq) / double(first) : 0.0;
  return o;
}

// C₁ = valid singletons; every tuple of Cℓ adds its best valid extension
// (largest l, smallest index on ties) until nothing changes.
inline std::set<std::vector<std::uint32_t>> oracle_clusters(const Instance& inst, double tau2, double tau3) {
  std::vector<Bag> full, pruned;
  for (std::size_t i = 0; i < inst.full.size(); ++i) {
    full.push_back(to_bag(inst.full[i]));
    pruned.push_back(to_bag(inst.pruned[i]));
  }
  auto valid = [&](const std::vector<std::uint32_t>& t) {
    auto o = oracle_score(full, pruned, t);
    return o.csq > 0 && o.l > tau2 && o.s > tau3;
  };
  std::set<std::vector<std::uint32_t>> c;
  for (std::uint32_t i = 0; i < full.size(); ++i)
    if (valid({i})) c.insert({i});
  for (;;) {
    auto next = c;
    for (const auto& t : c) {
      std::vector<std::uint32_t> best;
      double best_l = -1;
      for (std::uint32_t j = t.back() + 1; j < full.size(); ++j) {
        auto ext = t;
        ext.push_back(j);
        if (!valid(ext)) continue;
        double l = oracle_score(full, pruned, ext).l;
        if (l > best_l) {
          best_l = l;
          best = ext;
        }
      }
      if (!best.empty()) next.insert(best);
    }
    if (next == c) return c;
    c = std::move(next);
  }
}

}  // namespace structrec::testing
