#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "market.hpp"

namespace popmatch {

// splitmix64; uniform(n) is next() % n.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  int uniform(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + uniform(hi - lo + 1); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) std::swap(v[i], v[uniform(i + 1)]);
  }

 private:
  std::uint64_t state_;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  Model model = Model::TwoSided;
  int n_a = 3;
  int n_b = 3;
  int list_min = 1;
  int list_max = 3;
  Flavor flavor = Flavor::Layers;
  int layers = 1;
  int set_size = 1;      // largest |P_u| for uncertain agents
  bool equal_sets = false;  // every uncertain agent gets exactly set_size lists
  int uncertain = -1;    // how many agents carry uncertainty; -1 means all
  int k = 0;
  int cap_min = 1;
  int cap_max = 1;
};

inline void validate(const GeneratorConfig& c) {
  if (c.n_a < 0 || c.n_b < 0) throw InstanceError("generator: negative side size");
  if (c.list_min < 0 || c.list_max < c.list_min) throw InstanceError("generator: bad list length range");
  if (c.layers < 1) throw InstanceError("generator: need at least one layer");
  if (c.set_size < 1) throw InstanceError("generator: set size must be positive");
  if (c.k < 0) throw InstanceError("generator: k must be non-negative");
  if (c.cap_min < 1 || c.cap_max < c.cap_min) throw InstanceError("generator: bad capacity range");
  if (c.model == Model::TwoSided && c.cap_max != 1) throw InstanceError("generator: two-sided markets have unit capacities");
}

inline Market generate(const GeneratorConfig& c) {
  validate(c);
  SplitMix64 rng(c.seed);
  const bool ha = c.model == Model::HouseAllocation;
  std::vector<std::string> ids_a, ids_b;
  for (int i = 0; i < c.n_a; ++i) ids_a.push_back("a" + std::to_string(i + 1));
  for (int j = 0; j < c.n_b; ++j) ids_b.push_back("b" + std::to_string(j + 1));

  std::vector<std::string> owners;  // every agent with a list, file order
  std::vector<std::vector<std::string>> base;
  std::vector<std::vector<std::string>> nbrs_of_b(c.n_b);
  for (int i = 0; i < c.n_a; ++i) {
    int len = std::min(rng.between(c.list_min, c.list_max), c.n_b);
    std::vector<int> pool(c.n_b);
    std::iota(pool.begin(), pool.end(), 0);
    rng.shuffle(pool);
    std::vector<std::string> list;
    for (int t = 0; t < len; ++t) {
      list.push_back(ids_b[pool[t]]);
      nbrs_of_b[pool[t]].push_back(ids_a[i]);
    }
    owners.push_back(ids_a[i]);
    base.push_back(std::move(list));
  }
  if (!ha) {
    for (int j = 0; j < c.n_b; ++j) {
      rng.shuffle(nbrs_of_b[j]);
      owners.push_back(ids_b[j]);
      base.push_back(nbrs_of_b[j]);
    }
  }

  const int n = static_cast<int>(owners.size());
  std::vector<char> uncertain(n, c.uncertain < 0 ? 1 : 0);
  if (c.uncertain >= 0) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (int t = 0; t < std::min(c.uncertain, n); ++t) uncertain[order[t]] = 1;
  }

  MarketBuilder b(c.model);
  for (const auto& id : ids_a) b.add_a(id);
  for (const auto& id : ids_b) b.add_b(id, ha ? rng.between(c.cap_min, c.cap_max) : 1);

  switch (c.flavor) {
    case Flavor::Layers: {
      std::vector<ListMap> layers(c.layers);
      for (int v = 0; v < n; ++v) {
        layers[0][owners[v]] = base[v];
        for (int l = 1; l < c.layers; ++l) {
          auto list = base[v];
          if (uncertain[v]) rng.shuffle(list);
          layers[l][owners[v]] = std::move(list);
        }
      }
      b.layers(std::move(layers));
      break;
    }
    case Flavor::Independent: {
      SetMap sets;
      for (int v = 0; v < n; ++v) {
        std::vector<std::vector<std::string>> set{base[v]};
        if (uncertain[v]) {
          int want = c.equal_sets ? c.set_size : rng.between(1, c.set_size);
          for (int attempt = 0; static_cast<int>(set.size()) < want && attempt < 20 * want; ++attempt) {
            auto list = base[v];
            rng.shuffle(list);
            if (c.equal_sets || std::find(set.begin(), set.end(), list) == set.end()) set.push_back(std::move(list));
          }
        } else if (c.equal_sets) {
          set.assign(c.set_size, base[v]);
        }
        sets[owners[v]] = std::move(set);
      }
      b.independent(std::move(sets));
      break;
    }
    case Flavor::Robust: {
      ListMap profile;
      for (int v = 0; v < n; ++v) profile[owners[v]] = base[v];
      b.robust(c.k, std::move(profile));
      break;
    }
  }
  return b.build();
}

}  // namespace popmatch
