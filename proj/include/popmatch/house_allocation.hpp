#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assignment.hpp"
#include "market.hpp"
#include "preferences.hpp"

namespace popmatch {

enum class HaCriterion { CertainlyPopular, SumPopular, KRobustPopular };

inline void require_ha(const Market& m, const char* op) {
  if (m.two_sided()) throw UnsupportedError(std::string(op) + " needs a house allocation market");
}

// Adds the house kLastResortId with capacity |A| at the end of every list.
// New edges take ids num_edges()..num_edges()+|A|-1, one per agent in order.
inline Market append_last_resort(const Market& m) {
  require_ha(m, "append_last_resort");
  if (m.last_resort()) return m;
  if (m.flavor() == Flavor::Robust) throw UnsupportedError("a last-resort house is not allowed with robust scenarios");
  if (m.find_vertex(kLastResortId)) throw InstanceError("agent id " + kLastResortId + " is reserved");
  const int na = m.num_a(), e0 = m.num_edges(), h = m.num_vertices();
  auto houses = m.agents_b();
  houses.push_back({kLastResortId, std::max(1, na)});
  auto edges = m.edges();
  for (int a = 0; a < na; ++a) edges.push_back({a, h});
  auto extend = [&](Profile p) {
    for (int a = 0; a < na; ++a) p[a].push_back(e0 + a);
    p.emplace_back();
    return p;
  };
  Scenario sc = m.scenario();
  for (auto& p : sc.layers) p = extend(p);
  if (sc.flavor == Flavor::Independent) {
    for (int a = 0; a < na; ++a)
      for (auto& r : sc.sets[a]) r.push_back(e0 + a);
    sc.sets.push_back({Ranking{}});
  }
  return Market(m.model(), m.agents_a(), std::move(houses), std::move(edges), std::move(sc), h);
}

// Drops edges to a last-resort house that the caller's market lacks.
inline Matching strip_last_resort(const Market& original, const Matching& mt) {
  Matching out;
  for (int e : mt)
    if (e < original.num_edges()) out.push_back(e);
  return out;
}

inline Matching with_last_resort(const Market& lr, const Matching& mt) {
  std::vector<char> matched(lr.num_a(), 0);
  Matching out = mt;
  for (int e : mt) matched[lr.edge(e).a] = 1;
  for (int a = 0; a < lr.num_a(); ++a)
    if (!matched[a]) out.push_back(*lr.find_edge(a, *lr.last_resort()));
  return normalized(out);
}

// Profile with the last-resort edge appended, for a market extended by append_last_resort.
inline Profile extend_profile(const Market& original, const Market& lr, const Profile& p) {
  if (original.last_resort()) return p;
  Profile out = p;
  for (int a = 0; a < lr.num_a(); ++a) out[a].push_back(original.num_edges() + a);
  out.resize(lr.num_vertices());
  return out;
}

struct ProfileGraph {
  std::vector<int> f, s;                   // per agent: house vertex
  std::vector<int> f_edge, s_edge;         // per agent: edge id
  std::vector<std::vector<int>> admirers;  // per vertex (houses only)
  std::vector<char> tight;                 // per vertex
  std::vector<int> edges;                  // E_L, sorted
};

inline ProfileGraph profile_graph(const Market& m, const Profile& p) {
  require_ha(m, "profile_graph");
  if (!m.last_resort()) throw UnsupportedError("profile_graph needs a last-resort house");
  const int na = m.num_a(), nv = m.num_vertices();
  ProfileGraph g;
  g.f.assign(na, kUnmatched);
  g.s.assign(na, kUnmatched);
  g.f_edge.assign(na, kUnmatched);
  g.s_edge.assign(na, kUnmatched);
  g.admirers.assign(nv, {});
  g.tight.assign(nv, 0);
  for (int a = 0; a < na; ++a) {
    g.f_edge[a] = p[a].front();
    g.f[a] = m.edge(g.f_edge[a]).b;
    g.admirers[g.f[a]].push_back(a);
  }
  for (int b = na; b < nv; ++b) g.tight[b] = static_cast<int>(g.admirers[b].size()) >= m.capacity(b);
  for (int a = 0; a < na; ++a) {
    int f = g.f[a];
    if (static_cast<int>(g.admirers[f].size()) <= m.capacity(f)) {
      g.s[a] = f;
      g.s_edge[a] = g.f_edge[a];
    } else {
      for (int e : p[a]) {
        int b = m.edge(e).b;
        if (static_cast<int>(g.admirers[b].size()) < m.capacity(b)) {
          g.s[a] = b;
          g.s_edge[a] = e;
          break;
        }
      }
    }
    g.edges.push_back(g.f_edge[a]);
    if (g.s_edge[a] != g.f_edge[a]) g.edges.push_back(g.s_edge[a]);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

namespace detail {

// A-perfect assignment over the allowed edges that fills every required house.
inline std::optional<Matching> fill_edges(const Market& m, const std::vector<char>& allowed,
                                          const std::vector<char>& required) {
  FillProblem fp;
  fp.num_agents = m.num_a();
  fp.num_houses = m.num_b();
  fp.a_perfect = true;
  std::vector<int> ids;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!allowed[e]) continue;
    fp.edges.push_back({m.edge(e).a, m.edge(e).b - m.num_a()});
    ids.push_back(e);
  }
  for (int b = m.num_a(); b < m.num_vertices(); ++b) {
    fp.capacity.push_back(m.capacity(b));
    fp.required_fill.push_back(required[b]);
  }
  auto sol = solve_fill(fp);
  if (!sol) return std::nullopt;
  Matching out;
  for (int i : *sol) out.push_back(ids[i]);
  return normalized(out);
}

inline bool contains(const std::vector<int>& sorted, int x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

}  // namespace detail

// Popular matching in one fixed profile, or nothing when none exists.
inline std::optional<Matching> popular_ha(const Market& m, const Profile& p) {
  require_ha(m, "popular_ha");
  Market lr = append_last_resort(m);
  ProfileGraph g = profile_graph(lr, extend_profile(m, lr, p));
  std::vector<char> allowed(lr.num_edges(), 0);
  for (int e : g.edges) allowed[e] = 1;
  for (int e : g.edges) {
    const Edge& ed = lr.edge(e);
    if (g.tight[ed.b] && g.f[ed.a] != ed.b) allowed[e] = 0;
  }
  auto sol = detail::fill_edges(lr, allowed, g.tight);
  if (!sol) return std::nullopt;
  return strip_last_resort(m, *sol);
}

inline std::optional<Matching> popular_ha(const Market& m) {
  auto p = m.single_profile();
  if (!p) throw UnsupportedError("popular_ha needs a single preference profile");
  return popular_ha(m, *p);
}

struct AdmirerAnalysis {
  std::vector<std::vector<int>> ca, pa;  // per vertex (houses only), sorted agents
  std::vector<std::vector<int>> better;  // per edge (a, b): houses above b in some list of a
};

inline AdmirerAnalysis admirer_analysis(const Market& m) {
  require_ha(m, "admirer_analysis");
  if (m.flavor() == Flavor::Robust) throw UnsupportedError("admirer analysis needs layers or independent scenarios");
  AdmirerAnalysis out;
  out.ca.assign(m.num_vertices(), {});
  out.pa.assign(m.num_vertices(), {});
  out.better.assign(m.num_edges(), {});
  for (int a = 0; a < m.num_a(); ++a) {
    auto fam = m.family(a);
    if (m.degree(a) == 0) continue;
    std::vector<int> firsts;
    for (const auto& r : fam) firsts.push_back(m.edge(r.front()).b);
    std::sort(firsts.begin(), firsts.end());
    firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
    for (int b : firsts) out.pa[b].push_back(a);
    if (firsts.size() == 1) out.ca[firsts[0]].push_back(a);
    for (const auto& r : fam)
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) out.better[r[i]].push_back(m.edge(r[j]).b);
  }
  for (auto& h : out.better) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
  }
  return out;
}

// Whether edge e = (a, b) lies in E_L for every realizable profile L.
// Counts exclude a itself: in a profile using one of a's lists, a admires
// only that list's first house.
inline bool edge_in_E_hat(const Market& m, const AdmirerAnalysis& aa, int e) {
  const int a = m.edge(e).a, b = m.edge(e).b;
  auto others = [&](const std::vector<int>& set, int house) {
    return static_cast<int>(set.size()) - (detail::contains(set, a) ? 1 : 0) >= m.capacity(house);
  };
  for (const auto& r : m.family(a)) {
    if (r.front() == e) continue;
    if (!others(aa.ca[m.edge(r.front()).b], m.edge(r.front()).b)) return false;
    for (std::size_t i = 1; i < r.size() && r[i] != e; ++i) {
      int h = m.edge(r[i]).b;
      if (!others(aa.ca[h], h)) return false;
    }
    if (others(aa.pa[b], b)) return false;
  }
  return true;
}

inline bool edge_in_E_hat(const Market& m, int a, int b) {
  require_ha(m, "edge_in_E_hat");
  if (m.flavor() != Flavor::Independent) throw UnsupportedError("edge_in_E_hat needs an independent scenario");
  if (!m.last_resort()) throw UnsupportedError("edge_in_E_hat needs a last-resort house");
  auto e = m.find_edge(a, b);
  if (!e) return false;
  return edge_in_E_hat(m, admirer_analysis(m), *e);
}

namespace detail {

struct CertainStructure {
  std::vector<char> allowed;   // per edge of the extended market
  std::vector<char> required;  // per vertex
};

inline CertainStructure certain_structure(const Market& lr) {
  CertainStructure cs;
  cs.allowed.assign(lr.num_edges(), 0);
  cs.required.assign(lr.num_vertices(), 0);
  if (lr.flavor() == Flavor::Layers) {
    std::vector<int> count(lr.num_edges(), 0);
    std::vector<ProfileGraph> graphs;
    for (const auto& layer : lr.scenario().layers) {
      graphs.push_back(profile_graph(lr, layer));
      for (int e : graphs.back().edges) ++count[e];
    }
    const int layers = static_cast<int>(graphs.size());
    for (int e = 0; e < lr.num_edges(); ++e) cs.allowed[e] = count[e] == layers;
    for (const auto& g : graphs) {
      for (int e = 0; e < lr.num_edges(); ++e) {
        const Edge& ed = lr.edge(e);
        if (g.tight[ed.b] && g.f[ed.a] != ed.b) cs.allowed[e] = 0;
      }
      for (int b = lr.num_a(); b < lr.num_vertices(); ++b) cs.required[b] = cs.required[b] || g.tight[b];
    }
    return cs;
  }
  AdmirerAnalysis aa = admirer_analysis(lr);
  auto size = [](const std::vector<int>& v) { return static_cast<int>(v.size()); };
  for (int e = 0; e < lr.num_edges(); ++e) {
    const int a = lr.edge(e).a, b = lr.edge(e).b;
    bool keep = edge_in_E_hat(lr, aa, e);
    if (size(aa.pa[b]) >= lr.capacity(b) && !contains(aa.pa[b], a)) keep = false;
    if (size(aa.ca[b]) >= lr.capacity(b) && !contains(aa.ca[b], a)) keep = false;
    for (int h : aa.better[e])
      if (size(aa.ca[h]) < lr.capacity(h)) keep = false;
    cs.allowed[e] = keep;
  }
  for (int b = lr.num_a(); b < lr.num_vertices(); ++b) cs.required[b] = size(aa.pa[b]) >= lr.capacity(b);
  return cs;
}

}  // namespace detail

// A matching popular in every realizable profile, or nothing when none exists.
inline std::optional<Matching> certainly_popular_ha(const Market& m) {
  require_ha(m, "certainly_popular_ha");
  if (m.flavor() == Flavor::Robust) throw UnsupportedError("certainly_popular_ha needs layers or independent scenarios");
  Market lr = append_last_resort(m);
  auto cs = detail::certain_structure(lr);
  auto sol = detail::fill_edges(lr, cs.allowed, cs.required);
  if (!sol) return std::nullopt;
  return strip_last_resort(m, *sol);
}

namespace detail {

// Minimum over A-perfect assignments N (last resort = unmatched) of the summed
// per-agent votes vote(a, M(a), N(a)).  Returns N restricted to real houses
// when that minimum is negative.
template <typename Vote>
std::optional<Matching> ha_beating_matching(const Market& original, const Market& lr, const Matching& mt_lr, Vote&& vote) {
  const int na = lr.num_a();
  std::vector<int> slot_house;
  for (int b = na; b < lr.num_vertices(); ++b)
    for (int c = 0; c < lr.capacity(b); ++c) slot_house.push_back(b);
  const int n = static_cast<int>(slot_house.size());
  const std::int64_t big = 1'000'000'000;
  WeightMatrix w(n, 0);
  std::vector<int> edge_at(static_cast<std::size_t>(n) * n, kUnmatched);
  auto mine = lr.edge_of_a(mt_lr);
  for (int a = 0; a < na; ++a) {
    for (int j = 0; j < n; ++j) {
      auto e = lr.find_edge(a, slot_house[j]);
      if (!e) {
        w(a, j) = big;
        continue;
      }
      w(a, j) = vote(a, mine[a], *e);
      edge_at[static_cast<std::size_t>(a) * n + j] = *e;
    }
  }
  Assignment best = min_weight_perfect_matching(w);
  if (best.total >= 0) return std::nullopt;
  Matching out;
  for (int a = 0; a < na; ++a) out.push_back(edge_at[static_cast<std::size_t>(a) * n + best.col_of_row[a]]);
  return strip_last_resort(original, normalized(out));
}

inline Profile ha_worst_profile(const Market& original, const Market& lr, const PreferenceView& pref,
                                const Matching& mt_lr, const Matching& n) {
  auto mine = lr.edge_of_a(mt_lr);
  auto theirs = lr.edge_of_a(with_last_resort(lr, n));
  Profile p(original.num_vertices());
  for (int a = 0; a < lr.num_a(); ++a) {
    auto fam = original.family(a);
    bool against = pref.may_prefer(a, theirs[a], mine[a]);
    p[a] = fam[against ? pref.list_preferring(a, theirs[a], mine[a]) : 0];
  }
  return p;
}

}  // namespace detail

struct PartialOrderInstance {
  Market market;
  std::vector<std::vector<std::pair<int, int>>> greater;  // per agent: (b, b') house vertices, b above b'

  bool above(int a, int x, int y) const {
    return std::binary_search(greater[a].begin(), greater[a].end(), std::make_pair(x, y));
  }
  // Houses as vertices, kUnmatched below everything; incomparable pairs vote 0.
  int vote(int a, int current, int candidate) const {
    if (current == candidate) return 0;
    if (current == kUnmatched) return -1;
    if (candidate == kUnmatched) return 1;
    if (above(a, current, candidate)) return 1;
    if (above(a, candidate, current)) return -1;
    return 0;
  }
};

inline PartialOrderInstance aggregate_to_partial_order(const Market& m) {
  require_ha(m, "aggregate_to_partial_order");
  if (m.flavor() != Flavor::Layers || m.scenario().layers.size() != 2)
    throw UnsupportedError("aggregate_to_partial_order needs exactly two layers");
  PartialOrderInstance out{m, {}};
  out.greater.resize(m.num_a());
  const auto& layers = m.scenario().layers;
  for (int a = 0; a < m.num_a(); ++a) {
    ProfileRanks r1(m, layers[0]), r2(m, layers[1]);
    for (int x : m.incident(a))
      for (int y : m.incident(a))
        if (x != y && r1.prefers(a, x, y) && r2.prefers(a, x, y)) out.greater[a].push_back({m.edge(x).b, m.edge(y).b});
    std::sort(out.greater[a].begin(), out.greater[a].end());
  }
  return out;
}

struct RobustStructure {
  std::vector<std::vector<int>> only;  // per vertex (houses only): O(b), sorted agents
  std::vector<std::optional<int>> h;   // per agent with two or more houses: H_a(k)
  std::vector<int> violating;          // agents breaking the existence precondition
};

inline RobustStructure robust_structures(const Market& m, std::optional<int> k_override = std::nullopt) {
  require_ha(m, "robust_structures");
  if (m.flavor() != Flavor::Robust) throw UnsupportedError("robust_structures needs a robust scenario");
  if (m.last_resort()) throw UnsupportedError("robust scenarios cannot carry a last-resort house");
  const int k = k_override.value_or(m.scenario().k);
  RobustStructure rs;
  rs.only.assign(m.num_vertices(), {});
  rs.h.assign(m.num_a(), std::nullopt);
  for (int a = 0; a < m.num_a(); ++a)
    if (m.degree(a) == 1) rs.only[m.edge(m.incident(a)[0]).b].push_back(a);
  auto saturated = [&](int b) { return static_cast<int>(rs.only[b].size()) >= m.capacity(b); };
  for (int a = 0; a < m.num_a(); ++a) {
    if (m.degree(a) < 2) continue;
    const Ranking& base = m.scenario().base[a];
    const int len = static_cast<int>(base.size());
    for (int i = 0; i < len && !rs.h[a]; ++i) {
      int b = m.edge(base[i]).b;
      if (saturated(b)) continue;
      bool ok = true;
      for (int j = 0; j < len && ok; ++j)
        if (j != i && (j < i || j - i <= k)) ok = saturated(m.edge(base[j]).b);
      if (ok) rs.h[a] = b;
    }
    if (!rs.h[a]) {
      for (int e : base)
        if (!saturated(m.edge(e).b)) {
          rs.violating.push_back(a);
          break;
        }
    }
  }
  return rs;
}

// A matching popular under every base perturbation of at most k swaps per agent.
inline std::optional<Matching> k_robust_popular_ha(const Market& m, std::optional<int> k_override = std::nullopt) {
  require_ha(m, "k_robust_popular_ha");
  if (m.flavor() != Flavor::Robust) throw UnsupportedError("k_robust_popular_ha needs a robust scenario");
  const int k = k_override.value_or(m.scenario().k);
  if (k == 0) return popular_ha(with_single_profile(m, m.scenario().base));
  RobustStructure rs = robust_structures(m, k);
  if (!rs.violating.empty()) return std::nullopt;
  std::vector<int> load(m.num_vertices(), 0);
  Matching out;
  for (int b = m.num_a(); b < m.num_vertices(); ++b) {
    const auto& o = rs.only[b];
    int take = std::min<int>(static_cast<int>(o.size()), m.capacity(b));
    for (int i = 0; i < take; ++i) out.push_back(m.incident(o[i])[0]);
    load[b] += take;
  }
  for (int a = 0; a < m.num_a(); ++a) {
    if (!rs.h[a]) continue;
    int b = *rs.h[a];
    if (++load[b] > m.capacity(b)) return std::nullopt;
    out.push_back(*m.find_edge(a, b));
  }
  return normalized(out);
}

namespace detail {

inline Verdict fail_agent(int a, std::string reason) {
  Verdict v;
  v.holds = false;
  v.witness_agent = a;
  v.reason = std::move(reason);
  return v;
}

inline Verdict fail_edge(int e, std::string reason) {
  Verdict v;
  v.holds = false;
  v.witness_edge = e;
  v.reason = std::move(reason);
  return v;
}

// Popularity in one profile of an extended market, by the first/second house conditions.
inline std::optional<std::pair<int, std::string>> popular_conditions(const Market& lr, const ProfileGraph& g,
                                                                     const Matching& full) {
  std::vector<char> in_el(lr.num_edges(), 0);
  for (int e : g.edges) in_el[e] = 1;
  std::vector<int> load(lr.num_vertices(), 0), admirers_in(lr.num_vertices(), 0);
  for (int e : full) {
    const Edge& ed = lr.edge(e);
    if (!in_el[e]) return std::make_pair(e, std::string("edge is neither a first nor a second house"));
    ++load[ed.b];
    if (g.f[ed.a] == ed.b) ++admirers_in[ed.b];
  }
  for (int e : full) {
    int b = lr.edge(e).b;
    if (g.tight[b] && (load[b] != lr.capacity(b) || admirers_in[b] != load[b]))
      return std::make_pair(e, std::string("house is not saturated with admirers only"));
  }
  for (int b = lr.num_a(); b < lr.num_vertices(); ++b)
    if (g.tight[b] && load[b] < lr.capacity(b))
      return std::make_pair(*lr.find_edge(g.admirers[b].front(), b), std::string("house is not saturated with admirers only"));
  return std::nullopt;
}

}  // namespace detail

inline Verdict verify_ha(const Market& m, const Matching& mt, HaCriterion crit) {
  require_ha(m, "verify_ha");
  m.check_matching(mt);
  Verdict out;
  if (crit == HaCriterion::KRobustPopular) {
    if (m.flavor() != Flavor::Robust) throw UnsupportedError("k-robust-popular needs a robust scenario");
    const int k = m.scenario().k;
    if (k == 0) return verify_ha(with_single_profile(m, m.scenario().base), mt, HaCriterion::CertainlyPopular);
    RobustStructure rs = robust_structures(m, k);
    if (!rs.violating.empty())
      return detail::fail_agent(rs.violating.front(), "no k-robust popular matching exists: agent has no safe house");
    auto mine = m.edge_of_a(mt);
    for (int a = 0; a < m.num_a(); ++a) {
      if (m.degree(a) < 2) continue;
      int at = mine[a] == kUnmatched ? kUnmatched : m.edge(mine[a]).b;
      int want = rs.h[a] ? *rs.h[a] : kUnmatched;
      if (at != want) return detail::fail_agent(a, "agent is not at its safe house");
    }
    std::vector<int> load(m.num_vertices(), 0);
    for (int e : mt) ++load[m.edge(e).b];
    for (int b = m.num_a(); b < m.num_vertices(); ++b) {
      const auto& o = rs.only[b];
      if (static_cast<int>(o.size()) >= m.capacity(b)) {
        if (load[b] != m.capacity(b)) return detail::fail_agent(o.front(), "house is not filled from its sole admirers");
        for (int e : mt)
          if (m.edge(e).b == b && !detail::contains(o, m.edge(e).a))
            return detail::fail_edge(e, "house is not filled from its sole admirers");
      } else {
        for (int a : o)
          if (mine[a] == kUnmatched) return detail::fail_agent(a, "sole admirer is not at its only house");
      }
    }
    return out;
  }

  if (m.flavor() == Flavor::Robust) throw UnsupportedError("this criterion needs layers or independent scenarios");
  Market lr = append_last_resort(m);
  Matching full = with_last_resort(lr, mt);
  PreferenceView pref(lr);

  if (crit == HaCriterion::SumPopular) {
    detail::require_equal_votes(m);
    auto vote = [&](int a, int cur, int cand) -> std::int64_t { return pref.aggregate_vote(a, cur, cand); };
    if (auto n = detail::ha_beating_matching(m, lr, full, vote)) {
      out.holds = false;
      out.witness_matching = *n;
      out.scenario_label = "aggregated over all lists";
    }
    return out;
  }

  // Certainly popular: the characterization decides, an assignment search supplies the witness.
  auto fail_on = [&](int e, const std::string& reason) {
    return e < m.num_edges() ? detail::fail_edge(e, reason) : detail::fail_agent(lr.edge(e).a, reason);
  };
  if (m.flavor() == Flavor::Layers) {
    const auto& layers = lr.scenario().layers;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      auto broken = detail::popular_conditions(lr, profile_graph(lr, layers[l]), full);
      if (!broken) continue;
      ProfileRanks ranks(lr, layers[l]);
      auto vote = [&](int a, int cur, int cand) -> std::int64_t { return ranks.vote(a, cur, cand); };
      out = fail_on(broken->first, broken->second);
      out.witness_matching = detail::ha_beating_matching(m, lr, full, vote);
      out.scenario = m.scenario().layers[l];
      out.scenario_label = "layer " + std::to_string(l + 1);
      return out;
    }
    return out;
  }
  std::optional<std::pair<int, std::string>> broken;
  AdmirerAnalysis aa = admirer_analysis(lr);
  auto size = [](const std::vector<int>& v) { return static_cast<int>(v.size()); };
  std::vector<int> load(lr.num_vertices(), 0);
  for (int e : full) ++load[lr.edge(e).b];
  auto filled_from = [&](int b, const std::vector<int>& set) {
    if (load[b] != lr.capacity(b)) return false;
    for (int e : full)
      if (lr.edge(e).b == b && !detail::contains(set, lr.edge(e).a)) return false;
    return true;
  };
  for (int e : full) {
    const int a = lr.edge(e).a;
    if (!edge_in_E_hat(lr, aa, e)) {
      broken = std::make_pair(e, std::string("edge is not a first or second house in every profile"));
      break;
    }
    bool always_first = true;
    for (const auto& r : lr.family(a)) always_first = always_first && r.front() == e;
    if (!always_first) {
      for (int h : aa.better[e])
        if (!filled_from(h, aa.ca[h])) {
          broken = std::make_pair(e, std::string("a house the agent may prefer is not filled with certain admirers"));
          break;
        }
      if (broken) break;
    }
  }
  for (int b = lr.num_a(); b < lr.num_vertices() && !broken; ++b) {
    if (size(aa.pa[b]) >= lr.capacity(b) && !filled_from(b, aa.pa[b]))
      broken = std::make_pair(*lr.find_edge(aa.pa[b].front(), b), std::string("house is not filled with possible admirers"));
    else if (size(aa.ca[b]) >= lr.capacity(b) && !filled_from(b, aa.ca[b]))
      broken = std::make_pair(*lr.find_edge(aa.ca[b].front(), b), std::string("house is not filled with certain admirers"));
  }
  if (broken) {
    auto vote = [&](int a, int cur, int cand) -> std::int64_t { return pref.worst_case_vote(a, cur, cand); };
    out = fail_on(broken->first, broken->second);
    auto n = detail::ha_beating_matching(m, lr, full, vote);
    out.witness_matching = n;
    if (n) out.scenario = detail::ha_worst_profile(m, lr, pref, full, *n);
    out.scenario_label = "worst-case profile";
  }
  return out;
}

}  // namespace popmatch
