#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "market.hpp"

namespace popmatch {

// Position of every edge in each endpoint's list of one fixed profile.
class ProfileRanks {
 public:
  ProfileRanks(const Market& m, const Profile& p) : m_(&m), rank_a_(m.num_edges(), INT_MAX), rank_b_(m.num_edges(), INT_MAX) {
    for (int v = 0; v < m.num_vertices(); ++v)
      for (int i = 0; i < static_cast<int>(p[v].size()); ++i) {
        int e = p[v][i];
        (m.edge(e).a == v ? rank_a_ : rank_b_)[e] = i;
      }
  }

  int rank(int v, int e) const {
    if (e == kUnmatched) return INT_MAX;
    return m_->edge(e).a == v ? rank_a_[e] : rank_b_[e];
  }
  bool prefers(int v, int x, int y) const { return x != y && rank(v, x) < rank(v, y); }
  // +1 if v likes current better, -1 if candidate, 0 if equal.
  int vote(int v, int current, int candidate) const {
    if (current == candidate) return 0;
    return rank(v, current) < rank(v, candidate) ? 1 : -1;
  }

 private:
  const Market* m_;
  std::vector<int> rank_a_, rank_b_;
};

// Answers "some realizable list ranks x above y" for every flavor.
// Edge ids stand for partners; kUnmatched is worse than every partner.
class PreferenceView {
 public:
  explicit PreferenceView(const Market& m) : m_(&m), slot_a_(m.num_edges()), slot_b_(m.num_edges()) {
    for (int v = 0; v < m.num_vertices(); ++v) {
      const auto& inc = m.incident(v);
      for (int i = 0; i < static_cast<int>(inc.size()); ++i) (m.edge(inc[i]).a == v ? slot_a_ : slot_b_)[inc[i]] = i;
    }
    robust_ = m.flavor() == Flavor::Robust;
    k_ = m.scenario().k;
    pos_.resize(m.num_vertices());
    for (int v = 0; v < m.num_vertices(); ++v) {
      for (const Ranking& r : m.family(v)) {
        std::vector<int> pos(r.size());
        for (int i = 0; i < static_cast<int>(r.size()); ++i) pos[slot(v, r[i])] = i;
        pos_[v].push_back(std::move(pos));
      }
    }
  }

  const Market& market() const { return *m_; }

  bool may_prefer(int v, int x, int y) const {
    if (x == y || x == kUnmatched) return false;
    if (y == kUnmatched) return true;
    int sx = slot(v, x), sy = slot(v, y);
    if (robust_) {
      int px = pos_[v][0][sx], py = pos_[v][0][sy];
      return px < py || px - py <= k_;
    }
    for (const auto& pos : pos_[v])
      if (pos[sx] < pos[sy]) return true;
    return false;
  }

  bool always_prefers(int v, int x, int y) const { return x != y && !may_prefer(v, y, x); }

  int worst_case_vote(int v, int current, int candidate) const {
    if (current == candidate) return 0;
    return may_prefer(v, candidate, current) ? -1 : 1;
  }

  // Sum of v's votes over its lists (layers or P_v).
  int aggregate_vote(int v, int current, int candidate) const {
    if (current == candidate) return 0;
    const int n = static_cast<int>(pos_[v].size());
    if (candidate == kUnmatched) return n;
    if (current == kUnmatched) return -n;
    int sc = slot(v, current), sd = slot(v, candidate), total = 0;
    for (const auto& pos : pos_[v]) total += pos[sc] < pos[sd] ? 1 : -1;
    return total;
  }

  // Index into pos_[v] of a list realizing x above y, assuming may_prefer holds.
  int list_preferring(int v, int x, int y) const {
    if (robust_ || x == kUnmatched || y == kUnmatched) return 0;
    int sx = slot(v, x), sy = slot(v, y);
    for (int i = 0; i < static_cast<int>(pos_[v].size()); ++i)
      if (pos_[v][i][sx] < pos_[v][i][sy]) return i;
    return 0;
  }

 private:
  int slot(int v, int e) const { return m_->edge(e).a == v ? slot_a_[e] : slot_b_[e]; }

  const Market* m_;
  std::vector<int> slot_a_, slot_b_;
  bool robust_ = false;
  int k_ = 0;
  std::vector<std::vector<std::vector<int>>> pos_;
};

// String-level conveniences; an empty optional means "unmatched".
inline int partner_edge(const Market& m, int v, const std::optional<std::string>& partner) {
  if (!partner) return kUnmatched;
  int w = m.vertex(*partner);
  auto e = m.is_a(v) ? m.find_edge(v, w) : m.find_edge(w, v);
  if (!e) throw InstanceError(*partner + " is not a neighbor of " + m.id(v));
  return *e;
}

inline bool may_prefer(const Market& m, const std::string& u, const std::optional<std::string>& x,
                       const std::optional<std::string>& y) {
  int v = m.vertex(u);
  return PreferenceView(m).may_prefer(v, partner_edge(m, v, x), partner_edge(m, v, y));
}

inline bool always_prefers(const Market& m, const std::string& u, const std::optional<std::string>& x,
                           const std::optional<std::string>& y) {
  int v = m.vertex(u);
  return PreferenceView(m).always_prefers(v, partner_edge(m, v, x), partner_edge(m, v, y));
}

namespace detail {

// Aggregated voting is defined when every agent casts the same number of votes.
inline void require_equal_votes(const Market& m) {
  if (m.flavor() == Flavor::Robust) throw UnsupportedError("aggregated voting is not defined for robust scenarios");
  if (m.flavor() != Flavor::Independent) return;
  std::optional<std::size_t> size;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.degree(v) == 0) continue;
    std::size_t s = m.scenario().sets[v].size();
    if (size && *size != s) throw UnsupportedError("aggregated voting needs list sets of equal size");
    size = s;
  }
}

}  // namespace detail

// Layers become per-agent sets of the distinct lists seen across layers.
// Correlation between agents is lost.
inline Market to_independent(const Market& m) {
  if (m.flavor() == Flavor::Independent) return m;
  if (m.flavor() == Flavor::Robust) throw UnsupportedError("robust scenarios convert via robust_to_uncertain");
  Scenario sc;
  sc.flavor = Flavor::Independent;
  sc.sets.resize(m.num_vertices());
  for (int v = 0; v < m.num_vertices(); ++v)
    for (const auto& r : m.family(v))
      if (std::find(sc.sets[v].begin(), sc.sets[v].end(), r) == sc.sets[v].end()) sc.sets[v].push_back(r);
  return Market(m.model(), m.agents_a(), m.agents_b(), m.edges(), std::move(sc), m.last_resort());
}

}  // namespace popmatch
