#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "error.hpp"

namespace popmatch {

// Kendall tau distance: number of pairs ordered differently by x and y.
// Counted by merge sort over the positions of x's elements inside y.
template <typename T>
std::int64_t swap_distance(const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size()) throw InstanceError("swap_distance: lists differ in length");
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  {
    std::vector<std::pair<T, std::size_t>> pos_y;
    pos_y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pos_y.emplace_back(y[i], i);
    std::sort(pos_y.begin(), pos_y.end());
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (!(pos_y[i].first < pos_y[i + 1].first)) throw InstanceError("swap_distance: duplicate element");
    for (std::size_t i = 0; i < n; ++i) {
      auto it = std::lower_bound(pos_y.begin(), pos_y.end(), x[i],
                                 [](const auto& p, const T& v) { return p.first < v; });
      if (it == pos_y.end() || it->first < x[i] || x[i] < it->first)
        throw InstanceError("swap_distance: element sets differ");
      idx[i] = it->second;
    }
  }
  std::vector<std::size_t> buf(n);
  std::int64_t inversions = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      std::size_t mid = std::min(lo + width, n), hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (idx[j] < idx[i]) {
          inversions += static_cast<std::int64_t>(mid - i);
          buf[k++] = idx[j++];
        } else {
          buf[k++] = idx[i++];
        }
      }
      while (i < mid) buf[k++] = idx[i++];
      while (j < hi) buf[k++] = idx[j++];
    }
    std::copy(buf.begin(), buf.end(), idx.begin());
  }
  return inversions;
}

// Moves v up min(k, position) places; everything else keeps its relative order.
template <typename T>
std::vector<T> swap_up(const std::vector<T>& list, const T& v, std::int64_t k) {
  if (k < 0) throw InstanceError("swap_up: negative k");
  auto it = std::find(list.begin(), list.end(), v);
  if (it == list.end()) throw InstanceError("swap_up: element not in list");
  std::vector<T> out(list);
  auto pos = static_cast<std::int64_t>(it - list.begin());
  std::int64_t target = pos - std::min(k, pos);
  std::rotate(out.begin() + target, out.begin() + pos, out.begin() + pos + 1);
  return out;
}

// All lists within swap distance k of base, in breadth-first order starting
// with base itself.  Throws BudgetExceeded once more than limit lists appear.
template <typename T>
std::vector<std::vector<T>> swap_ball(const std::vector<T>& base, std::int64_t k,
                                      std::size_t limit = static_cast<std::size_t>(-1)) {
  std::vector<std::vector<T>> out{base};
  std::set<std::vector<T>> seen{base};
  std::size_t frontier_begin = 0;
  for (std::int64_t depth = 0; depth < k; ++depth) {
    std::size_t frontier_end = out.size();
    for (std::size_t f = frontier_begin; f < frontier_end; ++f) {
      for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        std::vector<T> next = out[f];
        std::swap(next[i], next[i + 1]);
        if (seen.insert(next).second) {
          out.push_back(std::move(next));
          if (out.size() > limit) throw BudgetExceeded("swap ball exceeds profile budget");
        }
      }
    }
    if (frontier_end == out.size()) break;
    frontier_begin = frontier_end;
  }
  return out;
}

}  // namespace popmatch
