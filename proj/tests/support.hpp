#pragma once

#include <string>
#include <utility>
#include <vector>

#include <popmatch/popmatch.hpp>

namespace popmatch::test {

using Pairs = std::vector<std::pair<std::string, std::string>>;

inline Market two_sided_layers(int na, int nb, std::vector<ListMap> layers) {
  MarketBuilder b(Model::TwoSided);
  for (int i = 1; i <= na; ++i) b.add_a("a" + std::to_string(i));
  for (int j = 1; j <= nb; ++j) b.add_b("b" + std::to_string(j));
  return b.layers(std::move(layers)).build();
}

inline Market two_sided_sets(int na, int nb, SetMap sets) {
  MarketBuilder b(Model::TwoSided);
  for (int i = 1; i <= na; ++i) b.add_a("a" + std::to_string(i));
  for (int j = 1; j <= nb; ++j) b.add_b("b" + std::to_string(j));
  return b.independent(std::move(sets)).build();
}

inline Market two_sided_robust(int na, int nb, int k, ListMap base) {
  MarketBuilder b(Model::TwoSided);
  for (int i = 1; i <= na; ++i) b.add_a("a" + std::to_string(i));
  for (int j = 1; j <= nb; ++j) b.add_b("b" + std::to_string(j));
  return b.robust(k, std::move(base)).build();
}

inline MarketBuilder ha_builder(int na, std::vector<int> capacities) {
  MarketBuilder b(Model::HouseAllocation);
  for (int i = 1; i <= na; ++i) b.add_a("a" + std::to_string(i));
  for (std::size_t j = 0; j < capacities.size(); ++j) b.add_b("b" + std::to_string(j + 1), capacities[j]);
  return b;
}

// a1: b1>b2, a2: b1>b2, b1: a2>a1, b2: a1>a2
inline Market classic_2x2() {
  return two_sided_layers(2, 2, {{{"a1", {"b1", "b2"}}, {"a2", {"b1", "b2"}}, {"b1", {"a2", "a1"}}, {"b2", {"a1", "a2"}}}});
}

inline Market one_edge() { return two_sided_layers(1, 1, {{{"a1", {"b1"}}, {"b1", {"a1"}}}}); }

inline Market three_identical_ha() {
  return ha_builder(3, {1, 1}).layers({{{"a1", {"b1", "b2"}}, {"a2", {"b1", "b2"}}, {"a3", {"b1", "b2"}}}}).build();
}

inline int edge(const Market& m, const std::string& a, const std::string& b) {
  return *m.find_edge(m.vertex(a), m.vertex(b));
}

inline Ranking ranking(const Market& m, const std::string& owner, const std::vector<std::string>& partners) {
  Ranking r;
  int v = m.vertex(owner);
  for (const auto& p : partners) r.push_back(m.is_a(v) ? edge(m, owner, p) : edge(m, p, owner));
  return r;
}

inline GeneratorConfig config(std::uint64_t seed, Model model, int na, int nb) {
  GeneratorConfig c;
  c.seed = seed;
  c.model = model;
  c.n_a = na;
  c.n_b = nb;
  c.list_min = 1;
  c.list_max = nb;
  return c;
}

}  // namespace popmatch::test
