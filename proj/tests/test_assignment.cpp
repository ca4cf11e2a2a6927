#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include <popmatch/assignment.hpp>

using namespace popmatch;

namespace {

int brute_max_matching(int nl, int nr, const BipartiteEdges& edges) {
  int best = 0;
  std::vector<char> used_l(nl, 0), used_r(nr, 0);
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int size) {
    best = std::max(best, size);
    if (i == edges.size()) return;
    go(i + 1, size);
    auto [l, r] = edges[i];
    if (!used_l[l] && !used_r[r]) {
      used_l[l] = used_r[r] = 1;
      go(i + 1, size + 1);
      used_l[l] = used_r[r] = 0;
    }
  };
  go(0, 0);
  return best;
}

std::int64_t brute_assignment(const WeightMatrix& m) {
  std::vector<int> perm(m.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t t = 0;
    for (int i = 0; i < m.n; ++i) t += m(i, perm[i]);
    best = std::min(best, t);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return m.n == 0 ? 0 : best;
}

bool brute_fill(const FillProblem& p) {
  std::vector<int> load(p.num_houses, 0);
  std::vector<int> chosen(p.num_agents, -1);
  std::function<bool(int)> go = [&](int a) -> bool {
    if (a == p.num_agents) {
      for (int h = 0; h < p.num_houses; ++h)
        if (p.required_fill[h] && load[h] != p.capacity[h]) return false;
      return true;
    }
    if (!p.a_perfect && go(a + 1)) return true;
    for (const auto& [x, h] : p.edges) {
      if (x != a || load[h] == p.capacity[h]) continue;
      ++load[h];
      bool ok = go(a + 1);
      --load[h];
      if (ok) return true;
    }
    return false;
  };
  return go(0);
}

void check_fill_solution(const FillProblem& p, const std::vector<int>& sol) {
  std::vector<int> load(p.num_houses, 0), deg(p.num_agents, 0);
  for (int i : sol) {
    ++deg[p.edges[i].first];
    ++load[p.edges[i].second];
  }
  for (int a = 0; a < p.num_agents; ++a) {
    EXPECT_LE(deg[a], 1);
    if (p.a_perfect) { EXPECT_EQ(deg[a], 1); }
  }
  for (int h = 0; h < p.num_houses; ++h) {
    EXPECT_LE(load[h], p.capacity[h]);
    if (p.required_fill[h]) { EXPECT_EQ(load[h], p.capacity[h]); }
  }
}

}  // namespace

TEST(MaxMatching, SingleEdge) { EXPECT_EQ(max_matching(1, 1, {{0, 0}}), (std::vector<int>{0})); }

TEST(MaxMatching, Complete3x3) {
  BipartiteEdges e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e.push_back({i, j});
  EXPECT_EQ(max_matching(3, 3, e).size(), 3u);
}

TEST(MaxMatching, PathA1B1A2) { EXPECT_EQ(max_matching(2, 1, {{0, 0}, {1, 0}}).size(), 1u); }

TEST(MaxMatching, AgreesWithExhaustiveSearch) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int nl = 1 + rng() % 6, nr = 1 + rng() % 6;
    BipartiteEdges e;
    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nr; ++j)
        if (rng() % 3 == 0) e.push_back({i, j});
    auto got = max_matching(nl, nr, e);
    EXPECT_EQ(static_cast<int>(got.size()), brute_max_matching(nl, nr, e));
    std::vector<char> l(nl, 0), r(nr, 0);
    for (int i : got) {
      EXPECT_FALSE(l[e[i].first]++);
      EXPECT_FALSE(r[e[i].second]++);
    }
  }
}

TEST(Hungarian, Diagonal) {
  WeightMatrix m(2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  EXPECT_EQ(min_weight_perfect_matching(m).total, 0);
}

TEST(Hungarian, TwoByTwo) {
  WeightMatrix m(2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 3;
  m(1, 1) = 0;
  EXPECT_EQ(min_weight_perfect_matching(m).total, 1);
}

TEST(Hungarian, AllZero) { EXPECT_EQ(min_weight_perfect_matching(WeightMatrix(5)).total, 0); }

TEST(Hungarian, AgreesWithPermutationSearch) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 1 + trial % 6;
    WeightMatrix m(n);
    for (auto& x : m.w) x = static_cast<int>(rng() % 9) - 4;
    Assignment a = min_weight_perfect_matching(m);
    EXPECT_EQ(a.total, brute_assignment(m));
    std::vector<int> cols = a.col_of_row;
    std::sort(cols.begin(), cols.end());
    for (int i = 0; i < n; ++i) EXPECT_EQ(cols[i], i);
  }
}

TEST(SolveFill, RequiredHouseFilled) {
  FillProblem p{2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {1, 1}, {1, 0}, true};
  auto sol = solve_fill(p);
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ(sol->size(), 2u);
  check_fill_solution(p, *sol);
}

TEST(SolveFill, InfeasibleByDegree) {
  FillProblem p{1, 1, {{0, 0}}, {2}, {1}, false};
  EXPECT_FALSE(solve_fill(p).has_value());
}

TEST(SolveFill, APerfectOnly) {
  FillProblem p{3, 3, {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}}, {1, 1, 1}, {0, 0, 0}, true};
  auto sol = solve_fill(p);
  ASSERT_TRUE(sol.has_value());
  check_fill_solution(p, *sol);
}

TEST(SolveFill, AgreesWithExhaustiveAssignment) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    FillProblem p;
    p.num_agents = 1 + rng() % 6;
    p.num_houses = 1 + rng() % 4;
    int total = 0;
    for (int h = 0; h < p.num_houses; ++h) {
      int q = 1 + rng() % 3;
      if (total + q > 8) q = 1;
      total += q;
      p.capacity.push_back(q);
      p.required_fill.push_back(rng() % 3 == 0);
    }
    for (int a = 0; a < p.num_agents; ++a)
      for (int h = 0; h < p.num_houses; ++h)
        if (rng() % 2) p.edges.push_back({a, h});
    p.a_perfect = rng() % 2;
    auto sol = solve_fill(p);
    EXPECT_EQ(sol.has_value(), brute_fill(p)) << trial;
    if (sol) check_fill_solution(p, *sol);
  }
}
