#include <gtest/gtest.h>

#include "support.hpp"

using namespace popmatch;
using namespace popmatch::test;

TEST(EnumerateMatchings, OneEdge) {
  auto all = enumerate_matchings(one_edge());
  EXPECT_EQ(all, (std::vector<Matching>{{}, {0}}));
}

TEST(EnumerateMatchings, CompleteTwoByTwo) { EXPECT_EQ(enumerate_matchings(classic_2x2()).size(), 7u); }

TEST(EnumerateMatchings, CapacityTwoHouse) {
  Market m = ha_builder(2, {2}).layers({{{"a1", {"b1"}}, {"a2", {"b1"}}}}).build();
  EXPECT_EQ(enumerate_matchings(m).size(), 4u);
}

TEST(EnumerateMatchings, BudgetEnforced) {
  Market m = generate(config(1, Model::TwoSided, 6, 6));
  EXPECT_THROW(enumerate_matchings(m, {5, 10}), BudgetExceeded);
}

TEST(EnumerateProfiles, Layers) {
  ListMap l1{{"a1", {"b1", "b2"}}, {"b1", {"a1"}}, {"b2", {"a1"}}};
  ListMap l2{{"a1", {"b2", "b1"}}, {"b1", {"a1"}}, {"b2", {"a1"}}};
  Market m = two_sided_layers(1, 2, {l1, l2});
  EXPECT_EQ(enumerate_profiles(m), m.scenario().layers);
}

TEST(EnumerateProfiles, IndependentProduct) {
  Market m = two_sided_sets(2, 2,
                            {{"a1", {{"b1", "b2"}, {"b2", "b1"}}},
                             {"a2", {{"b1", "b2"}, {"b2", "b1"}}},
                             {"b1", {{"a1", "a2"}}},
                             {"b2", {{"a1", "a2"}}}});
  EXPECT_EQ(enumerate_profiles(m).size(), 4u);
}

TEST(EnumerateProfiles, RobustSwapBall) {
  ListMap base{{"a1", {"b1", "b2", "b3"}}, {"b1", {"a1"}}, {"b2", {"a1"}}, {"b3", {"a1"}}};
  Market m = two_sided_robust(1, 3, 1, base);
  EXPECT_EQ(enumerate_profiles(m).size(), 3u);
}

TEST(EnumerateProfiles, RobustProductOfBalls) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorConfig c = config(seed, Model::TwoSided, 2, 3);
    c.flavor = Flavor::Robust;
    c.k = 1 + seed % 2;
    Market m = generate(c);
    std::size_t want = 1;
    for (int v = 0; v < m.num_vertices(); ++v) want *= swap_ball(m.scenario().base[v], m.scenario().k).size();
    EXPECT_EQ(enumerate_profiles(m).size(), want);
  }
}

TEST(EnumerateProfiles, BudgetEnforced) {
  GeneratorConfig c = config(2, Model::TwoSided, 4, 4);
  c.list_min = 4;
  c.flavor = Flavor::Robust;
  c.k = 3;
  EXPECT_THROW(enumerate_profiles(generate(c), {1000, 100}), BudgetExceeded);
}

TEST(Delta, Examples) {
  Market one = one_edge();
  Profile p = *one.single_profile();
  EXPECT_EQ(delta(one, p, {0}, {0}), 0);
  EXPECT_EQ(delta(one, p, {0}, {}), 2);
  Market ha = ha_builder(1, {1}).layers({{{"a1", {"b1"}}}}).build();
  EXPECT_EQ(delta(ha, *ha.single_profile(), {0}, {}), 1);
  // a1,a2 both prefer b1; b1 prefers a2 and b2 prefers a1: the two perfect matchings tie.
  Market m = two_sided_layers(
      2, 2, {{{"a1", {"b1", "b2"}}, {"a2", {"b2", "b1"}}, {"b1", {"a2", "a1"}}, {"b2", {"a1", "a2"}}}});
  Matching x = matching_from_pairs(m, {{"a1", "b1"}, {"a2", "b2"}});
  Matching y = matching_from_pairs(m, {{"a1", "b2"}, {"a2", "b1"}});
  EXPECT_EQ(delta(m, *m.single_profile(), x, y), 0);
}

TEST(BruteCheck, StableIsPopular) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Market m = generate(config(seed, Model::TwoSided, 1 + seed % 4, 1 + (seed / 4) % 4));
    Matching gs = gale_shapley(m, *m.single_profile());
    EXPECT_TRUE(brute_check(m, gs, Property::Popular).holds);
    for (const auto& mt : enumerate_matchings(m))
      if (brute_check(m, mt, Property::Stable).holds) { EXPECT_TRUE(brute_check(m, mt, Property::Popular).holds) << seed; }
  }
}

TEST(BruteCheck, EmptyMatchingNotPopular) {
  Verdict v = brute_check(classic_2x2(), {}, Property::Popular);
  EXPECT_FALSE(v.holds);
  EXPECT_TRUE(v.witness_matching.has_value());
}

TEST(BruteCheck, MinimumDeltaSign) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    GeneratorConfig c = config(seed, Model::TwoSided, 3, 3);
    c.flavor = Flavor::Independent;
    c.set_size = 2;
    c.uncertain = 2;
    Market m = generate(c);
    auto all = enumerate_matchings(m);
    auto profiles = enumerate_profiles(m);
    for (const auto& mt : all) {
      int worst = 0;
      for (const auto& p : profiles)
        for (const auto& n : all) worst = std::min(worst, delta(m, p, mt, n));
      EXPECT_EQ(brute_check(m, mt, Property::Popular).holds, worst >= 0) << seed;
    }
  }
}

TEST(BruteExists, ThreeAgentsOneList) {
  EXPECT_FALSE(brute_exists(three_identical_ha(), Property::Popular).has_value());
}

TEST(BruteExists, StableAlwaysInSingleProfile) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed)
    EXPECT_TRUE(brute_exists(generate(config(seed, Model::TwoSided, 3, 3)), Property::Stable).has_value());
}

TEST(BruteExists, SingleEdgeTwoLists) {
  Market m = two_sided_sets(1, 1, {{"a1", {{"b1"}, {"b1"}}}, {"b1", {{"a1"}, {"a1"}}}});
  EXPECT_EQ(brute_exists(m, Property::Dominant), (Matching{0}));
}

TEST(BruteExists, MutualBestPairsAreMatched) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Market m = generate(config(seed, Model::TwoSided, 3, 3));
    Profile p = *m.single_profile();
    for (const auto& mt : enumerate_matchings(m)) {
      if (!brute_check(m, mt, Property::Popular).holds) continue;
      auto mate = m.edge_of_vertex(mt);
      for (int e = 0; e < m.num_edges(); ++e) {
        int a = m.edge(e).a, b = m.edge(e).b;
        if (p[a].front() == e && p[b].front() == e) { EXPECT_TRUE(mate[a] != kUnmatched && mate[b] != kUnmatched); }
      }
    }
  }
}
