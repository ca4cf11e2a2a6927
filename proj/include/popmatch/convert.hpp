#pragma once

#include <string>

#include "house_allocation.hpp"
#include "io.hpp"
#include "two_sided.hpp"

namespace popmatch {

inline std::string copy_id(const DuplicatedInstance& d, int c) {
  const Market& m = d.market;
  return std::string(d.is_x[c] ? "x:" : "y:") + m.id(m.edge(c).a) + ":" + m.id(m.edge(c).b);
}

// Edges are listed explicitly because the copies are parallel.
inline json duplicated_json(const DuplicatedInstance& d) {
  const Market& m = d.market;
  json root = json::object();
  root["model"] = "two-sided-duplicated";
  json aa = json::array(), bb = json::array(), edges = json::array();
  for (int v = 0; v < m.num_vertices(); ++v) (m.is_a(v) ? aa : bb).push_back({{"id", m.id(v)}});
  for (int c = 0; c < m.num_edges(); ++c)
    edges.push_back({{"id", copy_id(d, c)}, {"a", m.id(m.edge(c).a)}, {"b", m.id(m.edge(c).b)}});
  json sets = json::object();
  for (int v = 0; v < m.num_vertices(); ++v) {
    json lists = json::array();
    for (const auto& r : m.scenario().sets[v]) {
      json l = json::array();
      for (int c : r) l.push_back(copy_id(d, c));
      lists.push_back(std::move(l));
    }
    sets[m.id(v)] = std::move(lists);
  }
  root["agents_a"] = std::move(aa);
  root["agents_b"] = std::move(bb);
  root["edges"] = std::move(edges);
  root["scenario"] = {{"type", "independent"}, {"sets", std::move(sets)}};
  return root;
}

// Per agent, the pairs [b, b'] with b above b' in both layers.
inline json partial_order_json(const PartialOrderInstance& po) {
  const Market& m = po.market;
  json root = json::object();
  root["model"] = "ha-partial-order";
  json aa = json::array(), bb = json::array();
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.is_a(v)) aa.push_back({{"id", m.id(v)}});
    else bb.push_back({{"capacity", m.capacity(v)}, {"id", m.id(v)}});
  }
  json order = json::object();
  for (int a = 0; a < m.num_a(); ++a) {
    json pairs = json::array();
    for (const auto& [x, y] : po.greater[a]) pairs.push_back(json::array({m.id(x), m.id(y)}));
    order[m.id(a)] = std::move(pairs);
  }
  root["agents_a"] = std::move(aa);
  root["agents_b"] = std::move(bb);
  root["order"] = std::move(order);
  return root;
}

}  // namespace popmatch
