#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "market.hpp"
#include "permutation.hpp"
#include "preferences.hpp"

namespace popmatch {

struct EnumerationBudget {
  std::int64_t max_matchings = 1'000'000;
  std::int64_t max_profiles = 10'000;
};

enum class Property { Stable, Popular, Dominant, SumPopular, SumDominant };

inline const char* property_name(Property p) {
  switch (p) {
    case Property::Stable: return "stable";
    case Property::Popular: return "popular";
    case Property::Dominant: return "dominant";
    case Property::SumPopular: return "sum-popular";
    case Property::SumDominant: return "sum-dominant";
  }
  return "?";
}

// Every capacity-respecting matching, by choosing for each A agent in order
// either nothing or one incident edge (incident edges in id order).
inline std::vector<Matching> enumerate_matchings(const Market& m, const EnumerationBudget& budget = {}) {
  std::vector<Matching> out;
  std::vector<int> load(m.num_vertices(), 0);
  Matching cur;
  std::function<void(int)> rec = [&](int a) {
    if (a == m.num_a()) {
      if (static_cast<std::int64_t>(out.size()) >= budget.max_matchings)
        throw BudgetExceeded("more than " + std::to_string(budget.max_matchings) + " matchings");
      out.push_back(normalized(cur));
      return;
    }
    rec(a + 1);
    for (int e : m.incident(a)) {
      int b = m.edge(e).b;
      if (load[b] >= m.capacity(b)) continue;
      ++load[b];
      cur.push_back(e);
      rec(a + 1);
      cur.pop_back();
      --load[b];
    }
  };
  rec(0);
  return out;
}

namespace detail {

inline std::vector<std::vector<Ranking>> realizable_lists(const Market& m, std::int64_t limit) {
  std::vector<std::vector<Ranking>> lists(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.flavor() == Flavor::Independent) lists[v] = m.scenario().sets[v];
    else lists[v] = swap_ball(m.scenario().base[v], m.scenario().k, static_cast<std::size_t>(limit));
  }
  return lists;
}

}  // namespace detail

// Calls visit(profile, label) for every realizable profile.
template <typename Visit>
void for_each_profile(const Market& m, const EnumerationBudget& budget, Visit&& visit) {
  if (m.flavor() == Flavor::Layers) {
    if (static_cast<std::int64_t>(m.scenario().layers.size()) > budget.max_profiles)
      throw BudgetExceeded("more than " + std::to_string(budget.max_profiles) + " profiles");
    for (std::size_t l = 0; l < m.scenario().layers.size(); ++l)
      if (visit(m.scenario().layers[l], "layer " + std::to_string(l + 1))) return;
    return;
  }
  auto lists = detail::realizable_lists(m, budget.max_profiles);
  std::int64_t total = 1;
  for (const auto& l : lists) {
    total *= static_cast<std::int64_t>(l.size());
    if (total > budget.max_profiles) throw BudgetExceeded("more than " + std::to_string(budget.max_profiles) + " profiles");
  }
  std::vector<std::size_t> pick(m.num_vertices(), 0);
  std::int64_t index = 0;
  while (true) {
    Profile p(m.num_vertices());
    for (int v = 0; v < m.num_vertices(); ++v) p[v] = lists[v][pick[v]];
    if (visit(p, "profile " + std::to_string(++index))) return;
    int v = m.num_vertices() - 1;
    while (v >= 0 && ++pick[v] == lists[v].size()) pick[v--] = 0;
    if (v < 0) return;
  }
}

inline std::vector<Profile> enumerate_profiles(const Market& m, const EnumerationBudget& budget = {}) {
  std::vector<Profile> out;
  for_each_profile(m, budget, [&](const Profile& p, const std::string&) {
    out.push_back(p);
    return false;
  });
  return out;
}

// Sum of votes for M against N: both sides in two-sided markets, A only in HA.
inline int delta(const Market& m, const Profile& p, const Matching& mt, const Matching& n) {
  ProfileRanks ranks(m, p);
  int total = 0;
  if (m.two_sided()) {
    auto x = m.edge_of_vertex(mt), y = m.edge_of_vertex(n);
    for (int v = 0; v < m.num_vertices(); ++v) total += ranks.vote(v, x[v], y[v]);
  } else {
    auto x = m.edge_of_a(mt), y = m.edge_of_a(n);
    for (int a = 0; a < m.num_a(); ++a) total += ranks.vote(a, x[a], y[a]);
  }
  return total;
}

namespace detail {

// Per voter, vote[v][j][i] for partner choices indexed 0 = unmatched, 1 + slot in incident(v).
class VoteTable {
 public:
  // Votes are summed when a vertex is given several lists.
  VoteTable(const Market& m, const std::vector<std::vector<const Ranking*>>& lists)
      : table_(m.num_vertices()), dim_(m.num_vertices()) {
    for (int v = 0; v < m.num_vertices(); ++v) {
      const auto& inc = m.incident(v);
      const int d = static_cast<int>(inc.size()) + 1;
      auto& t = table_[v];
      dim_[v] = d;
      t.assign(static_cast<std::size_t>(d) * d, 0);
      if (!m.has_preferences(v)) continue;
      for (const Ranking* r : lists[v]) {
        std::vector<int> rank(d, INT_MAX);
        for (int i = 0; i < static_cast<int>(r->size()); ++i) {
          int s = static_cast<int>(std::lower_bound(inc.begin(), inc.end(), (*r)[i]) - inc.begin());
          rank[s + 1] = i;
        }
        for (int x = 0; x < d; ++x)
          for (int y = 0; y < d; ++y)
            if (x != y) t[static_cast<std::size_t>(x) * d + y] += rank[x] < rank[y] ? 1 : -1;
      }
    }
  }

  int vote(int v, int x, int y) const { return table_[v][static_cast<std::size_t>(x) * dim_[v] + y]; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> dim_;
};

// Partner choice of every vertex as an index into the vote tables.
inline std::vector<int> partner_slots(const Market& m, const Matching& mt) {
  std::vector<int> out(m.num_vertices(), 0);
  for (int e : mt) {
    const Edge& ed = m.edge(e);
    for (int v : {ed.a, ed.b}) {
      const auto& inc = m.incident(v);
      out[v] = 1 + static_cast<int>(std::lower_bound(inc.begin(), inc.end(), e) - inc.begin());
    }
  }
  return out;
}

class BruteContext {
 public:
  BruteContext(const Market& m, const EnumerationBudget& budget) : m_(m), matchings_(enumerate_matchings(m, budget)) {
    for (const auto& n : matchings_) slots_.push_back(partner_slots(m, n));
    voters_ = m.two_sided() ? m.num_vertices() : m.num_a();
  }

  const std::vector<Matching>& matchings() const { return matchings_; }

  int delta(const VoteTable& t, const std::vector<int>& x, const std::vector<int>& y) const {
    int total = 0;
    for (int v = 0; v < voters_; ++v)
      if (x[v] != y[v]) total += t.vote(v, x[v], y[v]);
    return total;
  }

  // First N beating index i under table t, or -1.
  int beating(const VoteTable& t, std::size_t i, bool dominant) const {
    const auto& x = slots_[i];
    for (std::size_t j = 0; j < matchings_.size(); ++j) {
      if (j == i) continue;
      int d = delta(t, x, slots_[j]);
      if (d < 0 || (dominant && d == 0 && matchings_[j].size() > matchings_[i].size())) return static_cast<int>(j);
    }
    return -1;
  }

  int blocking(const Profile& p, std::size_t i) const {
    ProfileRanks ranks(m_, p);
    auto mate = m_.edge_of_vertex(matchings_[i]);
    for (int e = 0; e < m_.num_edges(); ++e) {
      const Edge& ed = m_.edge(e);
      if (ranks.prefers(ed.a, e, mate[ed.a]) && ranks.prefers(ed.b, e, mate[ed.b])) return e;
    }
    return kUnmatched;
  }

  std::size_t index_of(const Matching& mt) const {
    for (std::size_t j = 0; j < matchings_.size(); ++j)
      if (matchings_[j] == mt) return j;
    throw InstanceError("matching is not a matching of the instance");
  }

 private:
  const Market& m_;
  std::vector<Matching> matchings_;
  std::vector<std::vector<int>> slots_;
  int voters_ = 0;
};

inline VoteTable profile_table(const Market& m, const Profile& p) {
  std::vector<std::vector<const Ranking*>> lists(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) lists[v] = {&p[v]};
  return VoteTable(m, lists);
}

inline VoteTable aggregate_table(const Market& m) {
  if (m.flavor() == Flavor::Robust) throw UnsupportedError("aggregated voting is not defined for robust scenarios");
  std::vector<std::vector<Ranking>> fam(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v) fam[v] = m.family(v);
  std::vector<std::vector<const Ranking*>> lists(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v)
    for (const auto& r : fam[v]) lists[v].push_back(&r);
  return VoteTable(m, lists);
}

// Evaluates one property for the matchings at the given indices; the callback
// receives the verdict for each and may stop early by returning true.
template <typename OnVerdict>
void brute_scan(const Market& m, const BruteContext& ctx, Property prop, const std::vector<std::size_t>& which,
                const EnumerationBudget& budget, OnVerdict&& on_verdict) {
  std::vector<Verdict> verdicts(which.size());
  std::vector<char> open(which.size(), 1);
  if (prop == Property::SumPopular || prop == Property::SumDominant) {
    require_equal_votes(m);
    VoteTable t = aggregate_table(m);
    for (std::size_t w = 0; w < which.size(); ++w) {
      int j = ctx.beating(t, which[w], prop == Property::SumDominant);
      if (j >= 0) {
        verdicts[w].holds = false;
        verdicts[w].witness_matching = ctx.matchings()[j];
        verdicts[w].scenario_label = "aggregated over all lists";
      }
      if (on_verdict(w, verdicts[w])) return;
    }
    return;
  }
  for_each_profile(m, budget, [&](const Profile& p, const std::string& label) {
    std::optional<VoteTable> t;
    bool any_open = false;
    for (std::size_t w = 0; w < which.size(); ++w) {
      if (!open[w]) continue;
      if (prop == Property::Stable) {
        int e = ctx.blocking(p, which[w]);
        if (e != kUnmatched) {
          verdicts[w].holds = false;
          verdicts[w].witness_edge = e;
        }
      } else {
        if (!t) t = profile_table(m, p);
        int j = ctx.beating(*t, which[w], prop == Property::Dominant);
        if (j >= 0) {
          verdicts[w].holds = false;
          verdicts[w].witness_matching = ctx.matchings()[j];
        }
      }
      if (!verdicts[w].holds) {
        verdicts[w].scenario = p;
        verdicts[w].scenario_label = label;
        open[w] = 0;
      }
      any_open = any_open || open[w];
    }
    return !any_open;
  });
  for (std::size_t w = 0; w < which.size(); ++w)
    if (on_verdict(w, verdicts[w])) return;
}

}  // namespace detail

// Decides the property for M literally: every realizable profile (or the
// aggregated vote) against every matching of the instance.
inline Verdict brute_check(const Market& m, const Matching& mt, Property prop, const EnumerationBudget& budget = {}) {
  if (prop == Property::Stable && !m.two_sided()) throw UnsupportedError("stability needs a two-sided market");
  m.check_matching(mt);
  detail::BruteContext ctx(m, budget);
  Verdict out;
  detail::brute_scan(m, ctx, prop, {ctx.index_of(mt)}, budget, [&](std::size_t, const Verdict& v) {
    out = v;
    return true;
  });
  return out;
}

// First matching in enumeration order with the property, or nothing.
inline std::optional<Matching> brute_exists(const Market& m, Property prop, const EnumerationBudget& budget = {}) {
  if (prop == Property::Stable && !m.two_sided()) throw UnsupportedError("stability needs a two-sided market");
  detail::BruteContext ctx(m, budget);
  std::vector<std::size_t> all(ctx.matchings().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::optional<Matching> found;
  detail::brute_scan(m, ctx, prop, all, budget, [&](std::size_t w, const Verdict& v) {
    if (v.holds) found = ctx.matchings()[w];
    return v.holds;
  });
  return found;
}

}  // namespace popmatch
