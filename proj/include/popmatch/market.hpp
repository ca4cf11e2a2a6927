#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace popmatch {

enum class Model { TwoSided, HouseAllocation };
enum class Flavor { Layers, Independent, Robust };

inline constexpr int kUnmatched = -1;
inline const std::string kLastResortId = "$last_resort";

// Vertices are numbered A first (0..nA-1), then B (nA..nA+nB-1).
// A ranking lists the edge ids incident to its owner, best first.
using Ranking = std::vector<int>;
using Profile = std::vector<Ranking>;

// Sorted ascending edge ids.
using Matching = std::vector<int>;

struct Agent {
  std::string id;
  int capacity = 1;
};

struct Edge {
  int a = 0;
  int b = 0;
};

struct Scenario {
  Flavor flavor = Flavor::Layers;
  std::vector<Profile> layers;
  std::vector<std::vector<Ranking>> sets;
  Profile base;
  int k = 0;
};

struct Verdict {
  bool holds = true;
  std::optional<Matching> witness_matching;
  std::optional<int> witness_edge;
  std::optional<int> witness_agent;
  std::optional<Profile> scenario;
  std::string scenario_label;
  std::string reason;
};

inline Matching normalized(Matching m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

inline const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Layers: return "layers";
    case Flavor::Independent: return "independent";
    case Flavor::Robust: return "robust";
  }
  return "?";
}

class Market {
 public:
  Market() = default;

  Market(Model model, std::vector<Agent> agents_a, std::vector<Agent> agents_b, std::vector<Edge> edges,
         Scenario scenario, std::optional<int> last_resort = std::nullopt)
      : model_(model), edges_(std::move(edges)), scenario_(std::move(scenario)), last_resort_(last_resort) {
    num_a_ = static_cast<int>(agents_a.size());
    agents_ = std::move(agents_a);
    agents_.insert(agents_.end(), std::make_move_iterator(agents_b.begin()),
                   std::make_move_iterator(agents_b.end()));
    index();
    validate();
  }

  Model model() const { return model_; }
  bool two_sided() const { return model_ == Model::TwoSided; }
  int num_a() const { return num_a_; }
  int num_b() const { return static_cast<int>(agents_.size()) - num_a_; }
  int num_vertices() const { return static_cast<int>(agents_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool is_a(int v) const { return v < num_a_; }
  int b_vertex(int j) const { return num_a_ + j; }

  const Agent& agent(int v) const { return agents_[v]; }
  const std::string& id(int v) const { return agents_[v].id; }
  int capacity(int v) const { return agents_[v].capacity; }
  std::vector<Agent> agents_a() const { return {agents_.begin(), agents_.begin() + num_a_}; }
  std::vector<Agent> agents_b() const { return {agents_.begin() + num_a_, agents_.end()}; }

  std::optional<int> find_vertex(const std::string& name) const {
    auto it = vertex_of_id_.find(name);
    if (it == vertex_of_id_.end()) return std::nullopt;
    return it->second;
  }
  int vertex(const std::string& name) const {
    auto v = find_vertex(name);
    if (!v) throw InstanceError("unknown agent id '" + name + "'");
    return *v;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int other(int e, int v) const { return edges_[e].a == v ? edges_[e].b : edges_[e].a; }
  const std::vector<int>& incident(int v) const { return incident_[v]; }
  int degree(int v) const { return static_cast<int>(incident_[v].size()); }

  // First edge joining a and b, if any.
  std::optional<int> find_edge(int a, int b) const {
    auto it = edge_of_pair_.find({a, b});
    if (it == edge_of_pair_.end()) return std::nullopt;
    return it->second;
  }

  // Vertices whose rankings matter: everyone in two-sided markets, A only in HA.
  bool has_preferences(int v) const { return two_sided() || is_a(v); }

  const Scenario& scenario() const { return scenario_; }
  Flavor flavor() const { return scenario_.flavor; }
  std::optional<int> last_resort() const { return last_resort_; }

  // The rankings a vertex's realizable lists are built from: one per layer,
  // the set P_v, or just the base list for the robust flavor.
  std::vector<Ranking> family(int v) const {
    switch (scenario_.flavor) {
      case Flavor::Layers: {
        std::vector<Ranking> out;
        for (const auto& p : scenario_.layers) out.push_back(p[v]);
        return out;
      }
      case Flavor::Independent: return scenario_.sets[v];
      case Flavor::Robust: return {scenario_.base[v]};
    }
    return {};
  }

  // Every realizable profile equals this one when the scenario is deterministic.
  std::optional<Profile> single_profile() const {
    switch (scenario_.flavor) {
      case Flavor::Layers:
        if (scenario_.layers.size() == 1) return scenario_.layers[0];
        return std::nullopt;
      case Flavor::Independent: {
        Profile p(num_vertices());
        for (int v = 0; v < num_vertices(); ++v) {
          if (scenario_.sets[v].size() != 1) return std::nullopt;
          p[v] = scenario_.sets[v][0];
        }
        return p;
      }
      case Flavor::Robust:
        if (scenario_.k == 0) return scenario_.base;
        return std::nullopt;
    }
    return std::nullopt;
  }

  std::string edge_label(int e) const { return "(" + id(edges_[e].a) + "," + id(edges_[e].b) + ")"; }

  // Checks capacities and edge ids; throws InstanceError on violation.
  void check_matching(const Matching& m) const {
    std::vector<int> load(num_vertices(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      int e = m[i];
      if (e < 0 || e >= num_edges()) throw InstanceError("matching refers to an unknown edge");
      if (i > 0 && m[i - 1] >= e) throw InstanceError("matching edges must be sorted and distinct");
      if (++load[edges_[e].a] > 1) throw InstanceError("agent " + id(edges_[e].a) + " matched twice");
      if (++load[edges_[e].b] > capacity(edges_[e].b))
        throw InstanceError("capacity of " + id(edges_[e].b) + " exceeded");
    }
  }

  bool is_matching(const Matching& m) const {
    try {
      check_matching(m);
      return true;
    } catch (const InstanceError&) {
      return false;
    }
  }

  // Partner edge of every A vertex (kUnmatched when free).
  std::vector<int> edge_of_a(const Matching& m) const {
    std::vector<int> out(num_a_, kUnmatched);
    for (int e : m) out[edges_[e].a] = e;
    return out;
  }

  // Edge held by every vertex; only meaningful for unit capacities.
  std::vector<int> edge_of_vertex(const Matching& m) const {
    std::vector<int> out(num_vertices(), kUnmatched);
    for (int e : m) {
      out[edges_[e].a] = e;
      out[edges_[e].b] = e;
    }
    return out;
  }

 private:
  void index() {
    vertex_of_id_.clear();
    for (int v = 0; v < num_vertices(); ++v) {
      if (agents_[v].id.empty()) throw InstanceError("empty agent id");
      if (!vertex_of_id_.emplace(agents_[v].id, v).second)
        throw InstanceError("duplicate agent id '" + agents_[v].id + "'");
    }
    incident_.assign(num_vertices(), {});
    for (int e = 0; e < num_edges(); ++e) {
      const Edge& ed = edges_[e];
      if (ed.a < 0 || ed.a >= num_a_ || ed.b < num_a_ || ed.b >= num_vertices())
        throw InstanceError("edge endpoint out of range");
      incident_[ed.a].push_back(e);
      incident_[ed.b].push_back(e);
      edge_of_pair_.emplace(std::make_pair(ed.a, ed.b), e);
    }
  }

  void check_ranking(int v, const Ranking& r, const char* what) const {
    if (!has_preferences(v)) {
      if (!r.empty()) throw InstanceError("house " + id(v) + " cannot carry a preference list");
      return;
    }
    std::vector<int> sorted(r);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InstanceError(std::string(what) + ": list of " + id(v) + " contains a duplicate");
    if (sorted != incident_[v])
      throw InstanceError(std::string(what) + ": list of " + id(v) + " is not a permutation of its neighbors");
  }

  void check_profile(const Profile& p, const char* what) const {
    if (static_cast<int>(p.size()) != num_vertices()) throw InstanceError(std::string(what) + ": wrong profile size");
    for (int v = 0; v < num_vertices(); ++v) check_ranking(v, p[v], what);
  }

  void validate() const {
    for (int v = 0; v < num_vertices(); ++v) {
      if (agents_[v].capacity <= 0) throw InstanceError("capacity of " + id(v) + " must be positive");
      if (two_sided() && agents_[v].capacity != 1)
        throw InstanceError("two-sided markets have unit capacities (" + id(v) + ")");
    }
    switch (scenario_.flavor) {
      case Flavor::Layers:
        if (scenario_.layers.empty()) throw InstanceError("layers scenario needs at least one profile");
        for (const auto& p : scenario_.layers) check_profile(p, "layers");
        break;
      case Flavor::Independent:
        if (static_cast<int>(scenario_.sets.size()) != num_vertices()) throw InstanceError("independent: wrong size");
        for (int v = 0; v < num_vertices(); ++v) {
          if (scenario_.sets[v].empty()) throw InstanceError("independent: empty list set for " + id(v));
          for (const auto& r : scenario_.sets[v]) check_ranking(v, r, "independent");
        }
        break;
      case Flavor::Robust:
        if (scenario_.k < 0) throw InstanceError("robust: k must be non-negative");
        check_profile(scenario_.base, "robust");
        break;
    }
    if (last_resort_) {
      int h = *last_resort_;
      if (two_sided()) throw InstanceError("last-resort house is only defined for house allocation");
      if (h < num_a_ || h >= num_vertices()) throw InstanceError("last-resort house must be a house");
      if (capacity(h) != std::max(1, num_a_)) throw InstanceError("last-resort house must have capacity |A|");
      if (scenario_.flavor == Flavor::Robust) throw InstanceError("last-resort house is not allowed with robust");
      if (degree(h) != num_a_) throw InstanceError("last-resort house must be acceptable to every agent");
      for (int a = 0; a < num_a_; ++a)
        for (const auto& r : family(a))
          if (edges_[r.back()].b != h) throw InstanceError("last-resort house must be last in every list");
    }
  }

  Model model_ = Model::TwoSided;
  int num_a_ = 0;
  std::vector<Agent> agents_;
  std::vector<Edge> edges_;
  Scenario scenario_;
  std::optional<int> last_resort_;
  std::map<std::string, int> vertex_of_id_;
  std::vector<std::vector<int>> incident_;
  std::map<std::pair<int, int>, int> edge_of_pair_;
};

// The same market with one fixed profile as its only layer.
inline Market with_single_profile(const Market& m, Profile p) {
  Scenario sc;
  sc.flavor = Flavor::Layers;
  sc.layers.push_back(std::move(p));
  return Market(m.model(), m.agents_a(), m.agents_b(), m.edges(), std::move(sc), m.last_resort());
}

using ListMap = std::map<std::string, std::vector<std::string>>;
using SetMap = std::map<std::string, std::vector<std::vector<std::string>>>;

// Builds markets from string ids.  Edges are the pairs mentioned by any list
// (A-side lists only in house allocation), ordered by agent then partner.
class MarketBuilder {
 public:
  explicit MarketBuilder(Model model) : model_(model) {}

  MarketBuilder& add_a(std::string id) {
    a_.push_back({std::move(id), 1});
    return *this;
  }
  MarketBuilder& add_b(std::string id, int capacity = 1) {
    b_.push_back({std::move(id), capacity});
    return *this;
  }
  MarketBuilder& layers(std::vector<ListMap> profiles) {
    flavor_ = Flavor::Layers;
    layers_ = std::move(profiles);
    return *this;
  }
  MarketBuilder& independent(SetMap sets) {
    flavor_ = Flavor::Independent;
    sets_ = std::move(sets);
    return *this;
  }
  MarketBuilder& robust(int k, ListMap base) {
    flavor_ = Flavor::Robust;
    k_ = k;
    base_ = std::move(base);
    return *this;
  }
  MarketBuilder& last_resort(std::string id) {
    last_resort_ = std::move(id);
    return *this;
  }

  Market build() const {
    std::map<std::string, int> vertex;
    const int na = static_cast<int>(a_.size());
    const int nv = na + static_cast<int>(b_.size());
    for (int v = 0; v < nv; ++v) {
      const std::string& name = v < na ? a_[v].id : b_[v - na].id;
      if (!vertex.emplace(name, v).second) throw InstanceError("duplicate agent id '" + name + "'");
    }
    auto owner_of = [&](const std::string& name) {
      auto it = vertex.find(name);
      if (it == vertex.end()) throw InstanceError("unknown agent id '" + name + "'");
      if (model_ == Model::HouseAllocation && it->second >= na)
        throw InstanceError("house " + name + " cannot carry a preference list");
      return it->second;
    };
    auto partner_of = [&](int owner, const std::string& name) {
      auto it = vertex.find(name);
      if (it == vertex.end()) throw InstanceError("unknown agent id '" + name + "'");
      if ((owner < na) == (it->second < na)) throw InstanceError("list of an agent names its own side: " + name);
      return it->second;
    };

    std::set<std::pair<int, int>> pairs;
    auto collect = [&](const ListMap& lists) {
      for (const auto& [owner_id, list] : lists) {
        int owner = owner_of(owner_id);
        for (const auto& p : list) {
          int q = partner_of(owner, p);
          pairs.insert(owner < na ? std::make_pair(owner, q) : std::make_pair(q, owner));
        }
      }
    };
    for (const auto& l : layers_) collect(l);
    for (const auto& [owner_id, lists] : sets_)
      for (const auto& l : lists) collect(ListMap{{owner_id, l}});
    collect(base_);

    std::vector<Edge> edges;
    std::map<std::pair<int, int>, int> edge_id;
    for (const auto& pr : pairs) {
      edge_id.emplace(pr, static_cast<int>(edges.size()));
      edges.push_back({pr.first, pr.second});
    }
    auto ranking = [&](int owner, const std::vector<std::string>& list) {
      Ranking r;
      for (const auto& p : list) {
        int q = partner_of(owner, p);
        r.push_back(edge_id.at(owner < na ? std::make_pair(owner, q) : std::make_pair(q, owner)));
      }
      return r;
    };
    auto profile = [&](const ListMap& lists) {
      Profile prof(nv);
      for (const auto& [owner_id, list] : lists) {
        int owner = owner_of(owner_id);
        prof[owner] = ranking(owner, list);
      }
      return prof;
    };

    Scenario sc;
    sc.flavor = flavor_;
    switch (flavor_) {
      case Flavor::Layers:
        for (const auto& l : layers_) sc.layers.push_back(profile(l));
        break;
      case Flavor::Independent:
        sc.sets.assign(nv, {Ranking{}});
        for (const auto& [owner_id, lists] : sets_) {
          int owner = owner_of(owner_id);
          sc.sets[owner].clear();
          for (const auto& l : lists) sc.sets[owner].push_back(ranking(owner, l));
        }
        break;
      case Flavor::Robust:
        sc.k = k_;
        sc.base = profile(base_);
        break;
    }
    std::optional<int> lr;
    if (last_resort_) {
      auto it = vertex.find(*last_resort_);
      if (it == vertex.end()) throw InstanceError("unknown last-resort house '" + *last_resort_ + "'");
      lr = it->second;
    }
    return Market(model_, a_, b_, std::move(edges), std::move(sc), lr);
  }

 private:
  Model model_;
  std::vector<Agent> a_, b_;
  Flavor flavor_ = Flavor::Layers;
  std::vector<ListMap> layers_;
  SetMap sets_;
  ListMap base_;
  int k_ = 0;
  std::optional<std::string> last_resort_;
};

// Builds a matching from (a, b) id pairs.
inline Matching matching_from_pairs(const Market& m, const std::vector<std::pair<std::string, std::string>>& pairs) {
  Matching out;
  for (const auto& [x, y] : pairs) {
    int a = m.vertex(x), b = m.vertex(y);
    if (!m.is_a(a)) std::swap(a, b);
    auto e = m.find_edge(a, b);
    if (!e) throw InstanceError("pair (" + x + "," + y + ") is not an edge");
    out.push_back(*e);
  }
  std::sort(out.begin(), out.end());
  m.check_matching(out);
  return out;
}

}  // namespace popmatch
