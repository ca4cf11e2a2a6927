#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "error.hpp"

namespace popmatch {

using BipartiteEdges = std::vector<std::pair<int, int>>;

// Hopcroft-Karp.  Returns indices into edges of a maximum matching.
inline std::vector<int> max_matching(int num_left, int num_right, const BipartiteEdges& edges) {
  std::vector<std::vector<int>> adj(num_left);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) adj[edges[i].first].push_back(i);
  std::vector<int> match_l(num_left, -1), match_r(num_right, -1), dist(num_left);
  const int inf = std::numeric_limits<int>::max();

  auto bfs = [&] {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < num_left; ++u) {
      if (match_l[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = inf;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int ei : adj[u]) {
        int w = match_r[edges[ei].second];
        if (w < 0) found = true;
        else if (dist[w] == inf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  std::vector<std::size_t> it(num_left);
  auto dfs = [&](auto&& self, int u) -> bool {
    for (; it[u] < adj[u].size(); ++it[u]) {
      int ei = adj[u][it[u]];
      int r = edges[ei].second;
      int w = match_r[r];
      if (w < 0 || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_l[u] = ei;
        match_r[r] = u;
        return true;
      }
    }
    dist[u] = inf;
    return false;
  };
  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < num_left; ++u)
      if (match_l[u] < 0) dfs(dfs, u);
  }
  std::vector<int> out;
  for (int u = 0; u < num_left; ++u)
    if (match_l[u] >= 0) out.push_back(match_l[u]);
  std::sort(out.begin(), out.end());
  return out;
}

struct WeightMatrix {
  int n = 0;
  std::vector<std::int64_t> w;

  WeightMatrix() = default;
  explicit WeightMatrix(int dim, std::int64_t fill = 0) : n(dim), w(static_cast<std::size_t>(dim) * dim, fill) {}
  std::int64_t& operator()(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }
  std::int64_t operator()(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

struct Assignment {
  std::vector<int> col_of_row;
  std::int64_t total = 0;
};

// Hungarian method with potentials, O(n^3).
inline Assignment min_weight_perfect_matching(const WeightMatrix& m) {
  const int n = m.n;
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = 0;
      std::int64_t delta = inf;
      const std::int64_t* row = &m.w[static_cast<std::size_t>(i0 - 1) * n];
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        std::int64_t cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  Assignment out;
  out.col_of_row.assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j]) out.col_of_row[p[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) out.total += m(i, out.col_of_row[i]);
  return out;
}

// Dinic max flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n), level_(n), it_(n) {}

  int add_edge(int from, int to, std::int64_t cap) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }

  std::int64_t flow_on(int arc) const { return arcs_[arc ^ 1].cap; }

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (int a : adj_[x])
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[x] + 1;
          q.push(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(int x, int t, std::int64_t pushed) {
    if (x == t) return pushed;
    for (; it_[x] < adj_[x].size(); ++it_[x]) {
      int a = adj_[x][it_[x]];
      int y = arcs_[a].to;
      if (arcs_[a].cap <= 0 || level_[y] != level_[x] + 1) continue;
      if (std::int64_t f = dfs(y, t, std::min(pushed, arcs_[a].cap))) {
        arcs_[a].cap -= f;
        arcs_[a ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

struct FillProblem {
  int num_agents = 0;
  int num_houses = 0;
  BipartiteEdges edges;  // (agent, house)
  std::vector<int> capacity;
  std::vector<char> required_fill;
  bool a_perfect = false;
};

// Circulation with lower bounds: agents demand 1 when a_perfect, required
// houses demand exactly their capacity.  Returns indices into edges.
inline std::optional<std::vector<int>> solve_fill(const FillProblem& p) {
  if (static_cast<int>(p.capacity.size()) != p.num_houses) throw InstanceError("solve_fill: capacity size mismatch");
  std::vector<char> required = p.required_fill;
  required.resize(p.num_houses, 0);
  const int S = p.num_agents + p.num_houses, T = S + 1, SS = T + 1, TT = SS + 1;
  MaxFlow f(TT + 1);
  std::vector<std::int64_t> excess(TT + 1, 0);
  auto bounded = [&](int from, int to, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) return -1;
    excess[to] += lo;
    excess[from] -= lo;
    return f.add_edge(from, to, hi - lo);
  };
  for (int a = 0; a < p.num_agents; ++a) bounded(S, a, p.a_perfect ? 1 : 0, 1);
  std::vector<int> arcs;
  for (const auto& [a, h] : p.edges) {
    if (a < 0 || a >= p.num_agents || h < 0 || h >= p.num_houses) throw InstanceError("solve_fill: bad edge");
    arcs.push_back(bounded(a, p.num_agents + h, 0, 1));
  }
  for (int h = 0; h < p.num_houses; ++h) {
    if (p.capacity[h] <= 0) throw InstanceError("solve_fill: capacity must be positive");
    bounded(p.num_agents + h, T, required[h] ? p.capacity[h] : 0, p.capacity[h]);
  }
  f.add_edge(T, S, std::numeric_limits<std::int64_t>::max() / 4);
  std::int64_t need = 0;
  for (int x = 0; x <= T; ++x) {
    if (excess[x] > 0) {
      f.add_edge(SS, x, excess[x]);
      need += excess[x];
    } else if (excess[x] < 0) {
      f.add_edge(x, TT, -excess[x]);
    }
  }
  if (f.run(SS, TT) != need) return std::nullopt;
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i)
    if (f.flow_on(arcs[i]) > 0) out.push_back(i);
  return out;
}

}  // namespace popmatch
