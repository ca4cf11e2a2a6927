#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "market.hpp"
#include "permutation.hpp"
#include "preferences.hpp"

namespace popmatch {

enum class TwoSidedCriterion { Popular, Dominant };
enum class StableTarget { Stable, Dominant };

inline void require_two_sided(const Market& m, const char* op) {
  if (!m.two_sided()) throw UnsupportedError(std::string(op) + " needs a two-sided market");
}

// A-proposing deferred acceptance.
inline Matching gale_shapley(const Market& m, const Profile& p) {
  require_two_sided(m, "gale_shapley");
  ProfileRanks ranks(m, p);
  std::vector<std::size_t> next(m.num_a(), 0);
  std::vector<int> held(m.num_vertices(), kUnmatched);
  std::deque<int> free;
  for (int a = 0; a < m.num_a(); ++a) free.push_back(a);
  while (!free.empty()) {
    int a = free.front();
    free.pop_front();
    if (next[a] >= p[a].size()) continue;
    int e = p[a][next[a]++];
    int b = m.edge(e).b;
    int cur = held[b];
    if (cur == kUnmatched || ranks.prefers(b, e, cur)) {
      held[b] = e;
      if (cur != kUnmatched) free.push_back(m.edge(cur).a);
    } else {
      free.push_back(a);
    }
  }
  Matching out;
  for (int b = m.num_a(); b < m.num_vertices(); ++b)
    if (held[b] != kUnmatched) out.push_back(held[b]);
  return normalized(out);
}

inline std::vector<int> blocking_edges(const Market& m, const Profile& p, const Matching& mt) {
  require_two_sided(m, "blocking_edges");
  ProfileRanks ranks(m, p);
  auto mate = m.edge_of_vertex(mt);
  std::vector<int> out;
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    if (ranks.prefers(ed.a, e, mate[ed.a]) && ranks.prefers(ed.b, e, mate[ed.b])) out.push_back(e);
  }
  return out;
}

inline int worst_case_vote(const Market& m, int v, int current, int candidate) {
  return PreferenceView(m).worst_case_vote(v, current, candidate);
}

namespace detail {

// Completed bipartite graph on max(nA, nB) rows and columns.  Entry (i, j)
// is the vote of row agent i and column agent j for M against pairing them
// (or leaving them single when they are not adjacent or padding).
template <typename Vote>
WeightMatrix completed_graph(const Market& m, const std::vector<int>& mate, Vote&& vote, std::vector<int>& edge_at) {
  const int na = m.num_a(), nb = m.num_b(), n = std::max(na, nb);
  WeightMatrix w(n, 0);
  edge_at.assign(static_cast<std::size_t>(n) * n, kUnmatched);
  std::vector<std::int64_t> single(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) single[v] = vote(v, mate[v], kUnmatched);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = (i < na ? single[i] : 0) + (j < nb ? single[na + j] : 0);
  for (int e = 0; e < m.num_edges(); ++e) {
    int a = m.edge(e).a, b = m.edge(e).b, j = b - na;
    std::int64_t val = vote(a, mate[a], e) + vote(b, mate[b], e);
    std::size_t cell = static_cast<std::size_t>(a) * n + j;
    if (edge_at[cell] == kUnmatched || val < w(a, j)) {
      w(a, j) = val;
      edge_at[cell] = e;
    }
  }
  return w;
}

template <typename Vote>
std::optional<Matching> beating_matching(const Market& m, const Matching& mt, TwoSidedCriterion crit, Vote&& vote) {
  auto mate = m.edge_of_vertex(mt);
  std::vector<int> edge_at;
  WeightMatrix w = completed_graph(m, mate, vote, edge_at);
  const std::int64_t scale = static_cast<std::int64_t>(mt.size()) + 1;
  if (crit == TwoSidedCriterion::Dominant)
    for (std::size_t c = 0; c < w.w.size(); ++c) w.w[c] = w.w[c] * scale - (edge_at[c] != kUnmatched ? 1 : 0);
  Assignment best = min_weight_perfect_matching(w);
  bool fails = crit == TwoSidedCriterion::Popular ? best.total < 0 : best.total <= -scale;
  if (!fails) return std::nullopt;
  Matching n;
  for (int i = 0; i < w.n; ++i) {
    int e = edge_at[static_cast<std::size_t>(i) * w.n + best.col_of_row[i]];
    if (e != kUnmatched) n.push_back(e);
  }
  return normalized(n);
}

// A profile in which every vertex votes against M exactly as in the worst case.
inline Profile worst_case_profile(const Market& m, const PreferenceView& pref, const Matching& mt, const Matching& n) {
  auto mate = m.edge_of_vertex(mt), alt = m.edge_of_vertex(n);
  Profile p(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    auto fam = m.family(v);
    bool against = pref.may_prefer(v, alt[v], mate[v]);
    if (m.flavor() == Flavor::Robust) {
      p[v] = fam[0];
      if (against && mate[v] != kUnmatched) p[v] = swap_up(fam[0], alt[v], m.scenario().k);
    } else {
      p[v] = fam[against ? pref.list_preferring(v, alt[v], mate[v]) : 0];
    }
  }
  return p;
}

}  // namespace detail

inline Verdict verify_two_sided(const Market& m, const Matching& mt, TwoSidedCriterion crit, bool aggregated) {
  require_two_sided(m, "verify_two_sided");
  m.check_matching(mt);
  Verdict out;
  if (aggregated) {
    detail::require_equal_votes(m);
    PreferenceView pref(m);
    auto vote = [&](int v, int cur, int cand) -> std::int64_t { return pref.aggregate_vote(v, cur, cand); };
    if (auto n = detail::beating_matching(m, mt, crit, vote)) {
      out.holds = false;
      out.witness_matching = *n;
      out.scenario_label = "aggregated over all lists";
    }
    return out;
  }
  if (m.flavor() == Flavor::Layers) {
    for (std::size_t l = 0; l < m.scenario().layers.size(); ++l) {
      ProfileRanks ranks(m, m.scenario().layers[l]);
      auto vote = [&](int v, int cur, int cand) -> std::int64_t { return ranks.vote(v, cur, cand); };
      if (auto n = detail::beating_matching(m, mt, crit, vote)) {
        out.holds = false;
        out.witness_matching = *n;
        out.scenario = m.scenario().layers[l];
        out.scenario_label = "layer " + std::to_string(l + 1);
        return out;
      }
    }
    return out;
  }
  PreferenceView pref(m);
  auto vote = [&](int v, int cur, int cand) -> std::int64_t { return pref.worst_case_vote(v, cur, cand); };
  if (auto n = detail::beating_matching(m, mt, crit, vote)) {
    out.holds = false;
    out.witness_matching = *n;
    out.scenario = detail::worst_case_profile(m, pref, mt, *n);
    out.scenario_label = "worst-case profile";
  }
  return out;
}

// Stable in every realizable profile.  Layers are checked one by one; for the
// other flavors an edge blocks somewhere iff both endpoints may prefer it.
inline Verdict verify_certainly_stable(const Market& m, const Matching& mt) {
  require_two_sided(m, "verify_certainly_stable");
  m.check_matching(mt);
  Verdict out;
  if (m.flavor() == Flavor::Layers) {
    for (std::size_t l = 0; l < m.scenario().layers.size(); ++l) {
      auto blocking = blocking_edges(m, m.scenario().layers[l], mt);
      if (blocking.empty()) continue;
      out.holds = false;
      out.witness_edge = blocking.front();
      out.scenario = m.scenario().layers[l];
      out.scenario_label = "layer " + std::to_string(l + 1);
      return out;
    }
    return out;
  }
  PreferenceView pref(m);
  auto mate = m.edge_of_vertex(mt);
  for (int e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(e);
    if (!pref.may_prefer(ed.a, e, mate[ed.a]) || !pref.may_prefer(ed.b, e, mate[ed.b])) continue;
    out.holds = false;
    out.witness_edge = e;
    Matching n{e};
    out.scenario = detail::worst_case_profile(m, pref, mt, n);
    out.scenario_label = "worst-case profile";
    return out;
  }
  return out;
}

struct DuplicatedInstance {
  Market market;
  std::vector<int> base_edge;  // per copy
  std::vector<char> is_x;      // per copy
};

inline DuplicatedInstance duplicate_instance(const Market& m) {
  require_two_sided(m, "duplicate_instance");
  std::vector<std::vector<Ranking>> sets(m.num_vertices());
  if (m.flavor() == Flavor::Independent) {
    sets = m.scenario().sets;
  } else if (auto p = m.single_profile()) {
    for (int v = 0; v < m.num_vertices(); ++v) sets[v] = {(*p)[v]};
  } else {
    throw UnsupportedError("duplication needs an independent or single-profile scenario");
  }
  DuplicatedInstance d;
  std::vector<Edge> edges;
  for (int e = 0; e < m.num_edges(); ++e) {
    for (int c = 0; c < 2; ++c) {
      edges.push_back(m.edge(e));
      d.base_edge.push_back(e);
      d.is_x.push_back(c == 0);
    }
  }
  Scenario sc;
  sc.flavor = Flavor::Independent;
  sc.sets.resize(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    int first = m.is_a(v) ? 0 : 1;
    for (const auto& r : sets[v]) {
      Ranking t;
      for (int e : r) t.push_back(2 * e + first);
      for (int e : r) t.push_back(2 * e + 1 - first);
      sc.sets[v].push_back(std::move(t));
    }
  }
  d.market = Market(Model::TwoSided, m.agents_a(), m.agents_b(), std::move(edges), std::move(sc));
  return d;
}

inline Matching project_matching(const DuplicatedInstance& d, const Matching& copies) {
  Matching out;
  for (int c : copies) out.push_back(d.base_edge.at(c));
  return normalized(out);
}

// Super-stable matching under each vertex's partial order "always better".
// Proposal/deletion rounds reach a fixpoint; the engaged edges are then
// certified by the pairwise may-block test.  A blocking edge (m, w) with w
// engaged shows w's engaged edge belongs to no solution, so it is deleted and
// the rounds resume.
inline std::optional<Matching> certainly_stable(const Market& input) {
  require_two_sided(input, "certainly_stable");
  Market converted;
  const Market* mp = &input;
  if (input.flavor() != Flavor::Independent) {
    if (!input.single_profile()) throw UnsupportedError("certainly_stable needs an independent or single-profile scenario");
    converted = to_independent(input);
    mp = &converted;
  }
  const Market& m = *mp;
  PreferenceView pref(m);
  const int na = m.num_a(), nv = m.num_vertices(), ne = m.num_edges();
  std::vector<char> alive(ne, 1), engaged(ne, 0), proposed(nv, 0), queued(na, 0);
  std::vector<int> engaged_count(nv, 0);
  std::deque<int> queue;
  for (int a = 0; a < na; ++a) {
    queue.push_back(a);
    queued[a] = 1;
  }
  auto remove_edge = [&](int e) {
    if (!alive[e]) return;
    alive[e] = 0;
    if (engaged[e]) {
      engaged[e] = 0;
      int a = m.edge(e).a;
      --engaged_count[a];
      --engaged_count[m.edge(e).b];
      if (!queued[a]) {
        queued[a] = 1;
        queue.push_back(a);
      }
    }
  };

  std::vector<int> maximal;
  while (true) {
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      queued[a] = 0;
      maximal.clear();
      for (int e : m.scenario().sets[a][0]) {
        if (!alive[e]) continue;
        bool dominated = false;
        for (int x : maximal)
          if (pref.always_prefers(a, x, e)) {
            dominated = true;
            break;
          }
        if (!dominated) maximal.push_back(e);
      }
      for (int e : maximal) {
        if (!alive[e] || engaged[e]) continue;
        int b = m.edge(e).b;
        engaged[e] = 1;
        ++engaged_count[a];
        ++engaged_count[b];
        proposed[b] = 1;
        for (int e2 : m.incident(b))
          if (alive[e2] && e2 != e && pref.always_prefers(b, e, e2)) remove_edge(e2);
      }
    }
    bool changed = false;
    for (int b = na; b < nv; ++b) {
      if (engaged_count[b] < 2) continue;
      std::vector<int> held;
      for (int e : m.incident(b))
        if (alive[e] && engaged[e]) held.push_back(e);
      for (int e2 : m.incident(b)) {
        if (!alive[e2]) continue;
        bool beats_all = true;
        for (int s : held) beats_all = beats_all && pref.always_prefers(b, e2, s);
        if (!beats_all) remove_edge(e2);
      }
      changed = true;
    }
    if (changed) continue;

    for (int a = 0; a < na; ++a)
      if (engaged_count[a] > 1) return std::nullopt;
    for (int b = na; b < nv; ++b)
      if (proposed[b] && engaged_count[b] == 0) return std::nullopt;
    Matching mt;
    for (int e = 0; e < ne; ++e)
      if (engaged[e]) mt.push_back(e);
    auto mate = m.edge_of_vertex(mt);
    int blocking = kUnmatched;
    for (int e = 0; e < ne && blocking == kUnmatched; ++e) {
      const Edge& ed = m.edge(e);
      if (!engaged[e] && pref.may_prefer(ed.a, e, mate[ed.a]) && pref.may_prefer(ed.b, e, mate[ed.b])) blocking = e;
    }
    if (blocking == kUnmatched) return mt;
    int held = mate[m.edge(blocking).b];
    if (held == kUnmatched) return std::nullopt;
    remove_edge(held);
  }
}

inline std::optional<Matching> certainly_dominant(const Market& m) {
  require_two_sided(m, "certainly_dominant");
  DuplicatedInstance d = duplicate_instance(m);
  auto copies = certainly_stable(d.market);
  if (!copies) return std::nullopt;
  return project_matching(d, *copies);
}

// Each vertex's list set becomes {base with v lifted k places : v in base}.
inline Market robust_to_uncertain(const Market& m) {
  if (m.flavor() != Flavor::Robust) throw UnsupportedError("robust_to_uncertain needs a robust scenario");
  const int k = m.scenario().k;
  Scenario sc;
  sc.flavor = Flavor::Independent;
  sc.sets.resize(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    const Ranking& base = m.scenario().base[v];
    auto& set = sc.sets[v];
    for (int e : base) {
      Ranking r = swap_up(base, e, k);
      if (std::find(set.begin(), set.end(), r) == set.end()) set.push_back(std::move(r));
    }
    if (set.empty()) set.push_back(base);
  }
  return Market(m.model(), m.agents_a(), m.agents_b(), m.edges(), std::move(sc), m.last_resort());
}

inline std::optional<Matching> solve_robust_two_sided(const Market& m, StableTarget target) {
  require_two_sided(m, "solve_robust_two_sided");
  Market u = robust_to_uncertain(m);
  return target == StableTarget::Stable ? certainly_stable(u) : certainly_dominant(u);
}

}  // namespace popmatch
