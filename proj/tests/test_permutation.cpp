#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <popmatch/permutation.hpp>

using popmatch::swap_ball;
using popmatch::swap_distance;
using popmatch::swap_up;
using S = std::vector<std::string>;

namespace {

std::int64_t discordant_pairs(const S& x, const S& y) {
  std::int64_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      auto pi = std::find(y.begin(), y.end(), x[i]), pj = std::find(y.begin(), y.end(), x[j]);
      n += pi > pj;
    }
  return n;
}

// Mahonian numbers: permutations of n elements with at most k inversions.
std::int64_t mahonian_ball(int n, int k) {
  std::vector<std::int64_t> cnt{1};
  for (int m = 1; m <= n; ++m) {
    std::vector<std::int64_t> next(cnt.size() + m - 1, 0);
    for (std::size_t i = 0; i < cnt.size(); ++i)
      for (int j = 0; j < m; ++j) next[i + j] += cnt[i];
    cnt = next;
  }
  std::int64_t total = 0;
  for (int i = 0; i <= k && i < static_cast<int>(cnt.size()); ++i) total += cnt[i];
  return total;
}

}  // namespace

TEST(SwapDistance, TwoConsecutiveSwaps) { EXPECT_EQ(swap_distance(S{"a1", "a2", "a3"}, S{"a2", "a3", "a1"}), 2); }

TEST(SwapDistance, Identity) { EXPECT_EQ(swap_distance(S{"a1", "a2", "a3"}, S{"a1", "a2", "a3"}), 0); }

TEST(SwapDistance, Reversal) { EXPECT_EQ(swap_distance(S{"a1", "a2", "a3"}, S{"a3", "a2", "a1"}), 3); }

TEST(SwapDistance, DifferentSetsRejected) {
  EXPECT_THROW(swap_distance(S{"a1", "a2"}, S{"a1", "a3"}), popmatch::InstanceError);
}

TEST(SwapDistance, MatchesDiscordantPairsAndIsAMetric) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 7;
    S base(n);
    for (int i = 0; i < n; ++i) base[i] = "v" + std::to_string(i);
    S x = base, y = base, z = base;
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(y.begin(), y.end(), rng);
    std::shuffle(z.begin(), z.end(), rng);
    EXPECT_EQ(swap_distance(x, y), discordant_pairs(x, y));
    EXPECT_EQ(swap_distance(x, y), swap_distance(y, x));
    EXPECT_LE(swap_distance(x, z), swap_distance(x, y) + swap_distance(y, z));
  }
}

TEST(SwapUp, LiftTwoPlaces) {
  EXPECT_EQ(swap_up(S{"v1", "v2", "v3", "v4"}, std::string("v4"), 2), (S{"v1", "v4", "v2", "v3"}));
}

TEST(SwapUp, AlreadyFirst) { EXPECT_EQ(swap_up(S{"v1", "v2"}, std::string("v1"), 5), (S{"v1", "v2"})); }

TEST(SwapUp, OneTransposition) {
  EXPECT_EQ(swap_up(S{"v1", "v2", "v3"}, std::string("v3"), 1), (S{"v1", "v3", "v2"}));
}

TEST(SwapUp, DistanceBoundedByKAndPosition) {
  S list{"v1", "v2", "v3", "v4", "v5"};
  for (int pos = 0; pos < 5; ++pos)
    for (int k = 0; k <= 6; ++k)
      EXPECT_EQ(swap_distance(list, swap_up(list, list[pos], k)), std::min(k, pos));
}

TEST(SwapBall, SizesAreMahonian) {
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k <= 6; ++k) {
      std::vector<int> base(n);
      std::iota(base.begin(), base.end(), 0);
      auto ball = swap_ball(base, k, 1000);
      EXPECT_EQ(static_cast<std::int64_t>(ball.size()), mahonian_ball(n, k)) << n << " " << k;
      ASSERT_FALSE(ball.empty());
      EXPECT_EQ(ball.front(), base);
      for (const auto& r : ball) EXPECT_LE(swap_distance(base, r), k);
    }
}

TEST(SwapBall, LimitEnforced) {
  std::vector<int> base{0, 1, 2, 3, 4};
  EXPECT_THROW(swap_ball(base, 10, 50), popmatch::BudgetExceeded);
}
