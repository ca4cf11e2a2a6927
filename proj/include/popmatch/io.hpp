#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "market.hpp"

namespace popmatch {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InstanceError(std::string("missing key '") + key + "'");
  return *it;
}

inline std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw InstanceError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InstanceError(std::string(what) + " must be an integer");
  auto v = j.get<long long>();
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw InstanceError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

inline void only_keys(const json& obj, std::initializer_list<const char*> allowed, const char* what) {
  if (!obj.is_object()) throw InstanceError(std::string(what) + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw InstanceError(std::string("unexpected key '") + k + "' in " + what);
  }
}

inline std::vector<std::string> id_list(const json& j) {
  if (!j.is_array()) throw InstanceError("preference list must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, "partner id"));
  return out;
}

inline ListMap list_map(const json& j) {
  if (!j.is_object()) throw InstanceError("profile must be an object");
  ListMap out;
  for (const auto& [k, v] : j.items()) out[k] = id_list(v);
  return out;
}

inline json ranking_json(const Market& m, int v, const Ranking& r) {
  json arr = json::array();
  for (int e : r) arr.push_back(m.id(m.other(e, v)));
  return arr;
}

inline json profile_json(const Market& m, const Profile& p) {
  json obj = json::object();
  for (int v = 0; v < m.num_vertices(); ++v)
    if (m.has_preferences(v)) obj[m.id(v)] = ranking_json(m, v, p[v]);
  return obj;
}

}  // namespace detail

// Canonical layout: sorted keys, containers of scalars on one line.
inline void write_json(std::string& out, const json& j, int depth) {
  auto flat = [](const json& c) {
    for (const auto& x : c) if (x.is_structured()) return false;
    return true;
  };
  if (!j.is_structured() || flat(j)) {
    out += j.dump();
    return;
  }
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  bool first = true;
  if (j.is_array()) {
    out += "[\n";
    for (const auto& x : j) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      write_json(out, x, depth + 1);
    }
    out += "\n" + close + "]";
  } else {
    out += "{\n";
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(k).dump() + ": ";
      write_json(out, v, depth + 1);
    }
    out += "\n" + close + "}";
  }
}

inline std::string canonical(const json& j) {
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

inline Market parse_instance_json(const json& root) {
  using namespace detail;
  only_keys(root, {"model", "agents_a", "agents_b", "scenario", "last_resort"}, "instance");
  std::string model = as_string(field(root, "model"), "model");
  Model md;
  if (model == "two-sided") md = Model::TwoSided;
  else if (model == "ha") md = Model::HouseAllocation;
  else throw InstanceError("unknown model '" + model + "'");

  MarketBuilder b(md);
  auto agents = [&](const char* key, bool side_a) {
    const json& arr = field(root, key);
    if (!arr.is_array()) throw InstanceError(std::string(key) + " must be an array");
    for (const auto& ag : arr) {
      only_keys(ag, {"id", "capacity"}, key);
      std::string id = as_string(field(ag, "id"), "id");
      int cap = ag.contains("capacity") ? as_int(ag["capacity"], "capacity") : 1;
      if (side_a) {
        if (cap != 1) throw InstanceError("agents in A have unit capacity (" + id + ")");
        b.add_a(id);
      } else {
        b.add_b(id, cap);
      }
    }
  };
  agents("agents_a", true);
  agents("agents_b", false);

  const json& sc = field(root, "scenario");
  if (!sc.is_object()) throw InstanceError("scenario must be an object");
  std::string type = as_string(field(sc, "type"), "scenario.type");
  if (type == "layers") {
    only_keys(sc, {"type", "profiles"}, "scenario");
    const json& ps = field(sc, "profiles");
    if (!ps.is_array()) throw InstanceError("profiles must be an array");
    std::vector<ListMap> layers;
    for (const auto& p : ps) layers.push_back(list_map(p));
    b.layers(std::move(layers));
  } else if (type == "independent") {
    only_keys(sc, {"type", "sets"}, "scenario");
    const json& ss = field(sc, "sets");
    if (!ss.is_object()) throw InstanceError("sets must be an object");
    SetMap sets;
    for (const auto& [k, v] : ss.items()) {
      if (!v.is_array() || v.empty()) throw InstanceError("list set of " + k + " must be a non-empty array");
      for (const auto& l : v) sets[k].push_back(id_list(l));
    }
    b.independent(std::move(sets));
  } else if (type == "robust") {
    only_keys(sc, {"type", "k", "profile"}, "scenario");
    b.robust(as_int(field(sc, "k"), "k"), list_map(field(sc, "profile")));
  } else {
    throw InstanceError("unknown scenario type '" + type + "'");
  }
  if (root.contains("last_resort")) b.last_resort(as_string(root["last_resort"], "last_resort"));
  return b.build();
}

inline Market parse_instance(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance_json(root);
}

inline json instance_json(const Market& m) {
  using namespace detail;
  json root = json::object();
  root["model"] = m.two_sided() ? "two-sided" : "ha";
  json aa = json::array(), bb = json::array();
  for (int v = 0; v < m.num_vertices(); ++v) {
    json ag = {{"id", m.id(v)}};
    if (!m.is_a(v) && !m.two_sided()) ag["capacity"] = m.capacity(v);
    (m.is_a(v) ? aa : bb).push_back(std::move(ag));
  }
  root["agents_a"] = std::move(aa);
  root["agents_b"] = std::move(bb);
  const Scenario& s = m.scenario();
  json sc = json::object();
  sc["type"] = flavor_name(s.flavor);
  switch (s.flavor) {
    case Flavor::Layers: {
      json ps = json::array();
      for (const auto& p : s.layers) ps.push_back(profile_json(m, p));
      sc["profiles"] = std::move(ps);
      break;
    }
    case Flavor::Independent: {
      json sets = json::object();
      for (int v = 0; v < m.num_vertices(); ++v) {
        if (!m.has_preferences(v)) continue;
        json lists = json::array();
        for (const auto& r : s.sets[v]) lists.push_back(ranking_json(m, v, r));
        sets[m.id(v)] = std::move(lists);
      }
      sc["sets"] = std::move(sets);
      break;
    }
    case Flavor::Robust:
      sc["k"] = s.k;
      sc["profile"] = profile_json(m, s.base);
      break;
  }
  root["scenario"] = std::move(sc);
  if (m.last_resort()) root["last_resort"] = m.id(*m.last_resort());
  return root;
}

inline std::string serialize_instance(const Market& m) { return canonical(instance_json(m)); }

inline json matching_json(const Market& m, const Matching& mt) {
  json arr = json::array();
  for (int e : mt) arr.push_back(json::array({m.id(m.edge(e).a), m.id(m.edge(e).b)}));
  return arr;
}

inline std::string serialize_matching(const Market& m, const Matching& mt) { return matching_json(m, mt).dump() + "\n"; }

inline Matching parse_matching(const Market& m, const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_array()) throw InstanceError("matching must be an array of pairs");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : root) {
    if (!p.is_array() || p.size() != 2) throw InstanceError("matching entries must be [a, b] pairs");
    pairs.emplace_back(detail::as_string(p[0], "agent id"), detail::as_string(p[1], "partner id"));
  }
  return matching_from_pairs(m, pairs);
}

}  // namespace popmatch
