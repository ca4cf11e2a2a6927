#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <popmatch/popmatch.hpp>

namespace popmatch::cli {

enum Exit : int { kHolds = 0, kNone = 1, kUsage = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InstanceError("cannot write " + path);
  out << text;
}

inline std::string profile_text(const Market& m, const Profile& p) { return detail::profile_json(m, p).dump(); }

inline void print_verdict(const Market& m, const Verdict& v, std::ostream& out) {
  out << "result: " << (v.holds ? "holds" : "fails") << "\n";
  if (v.holds) return;
  if (!v.reason.empty()) out << "reason: " << v.reason << "\n";
  if (v.witness_matching) out << "witness matching: " << serialize_matching(m, *v.witness_matching);
  if (v.witness_edge) out << "witness edge: " << m.edge_label(*v.witness_edge) << "\n";
  if (v.witness_agent) out << "witness agent: " << m.id(*v.witness_agent) << "\n";
  if (!v.scenario_label.empty()) out << "scenario: " << v.scenario_label << "\n";
  if (v.scenario) out << "profile: " << profile_text(m, *v.scenario) << "\n";
}

inline void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

inline const char* hard_hint = "this problem is NP-hard; use `popmatch oracle <instance> exists` on small instances";

inline std::optional<Matching> solve(const Market& m, const std::string& problem) {
  const bool two = m.two_sided();
  const Flavor f = m.flavor();
  if (problem == "stable") {
    require(two, "stable needs a two-sided market");
    auto p = m.single_profile();
    require(p.has_value(), "stable needs a single preference profile; try certainly-stable");
    return gale_shapley(m, *p);
  }
  if (problem == "certainly-stable" || problem == "certainly-dominant") {
    require(two, problem + " needs a two-sided market");
    require(f != Flavor::Robust, "robust scenarios use k-robust-stable or k-robust-dominant");
    require(f == Flavor::Independent || m.single_profile().has_value(),
            problem + " is NP-hard for correlated layers; use `popmatch oracle <instance> exists`");
    return problem == "certainly-stable" ? certainly_stable(m) : certainly_dominant(m);
  }
  if (problem == "k-robust-stable" || problem == "k-robust-dominant") {
    require(two, problem + " needs a two-sided market");
    require(f == Flavor::Robust, problem + " needs a robust scenario");
    return solve_robust_two_sided(m, problem == "k-robust-stable" ? StableTarget::Stable : StableTarget::Dominant);
  }
  if (problem == "popular-ha") {
    require(!two, "popular-ha needs a house allocation market");
    auto p = m.single_profile();
    require(p.has_value(), "popular-ha needs a single preference profile; try certainly-popular-ha");
    if (f == Flavor::Robust) return popular_ha(with_single_profile(m, *p));
    return popular_ha(m, *p);
  }
  if (problem == "certainly-popular-ha") {
    require(!two, "certainly-popular-ha needs a house allocation market");
    require(f != Flavor::Robust, "robust scenarios use k-robust-popular-ha");
    return certainly_popular_ha(m);
  }
  if (problem == "k-robust-popular-ha") {
    require(!two, "k-robust-popular-ha needs a house allocation market");
    require(f == Flavor::Robust, "k-robust-popular-ha needs a robust scenario");
    return k_robust_popular_ha(m);
  }
  static const std::vector<std::string> hard = {"certainly-popular", "k-robust-popular", "sum-popular", "sum-dominant",
                                                "sum-popular-ha"};
  for (const auto& h : hard) require(problem != h, problem + ": " + hard_hint);
  throw UsageError("unknown problem '" + problem + "'");
}

inline Verdict verify(const Market& m, const Matching& mt, const std::string& criterion) {
  auto strip = [&](const std::string& c) {
    for (const char* prefix : {"certainly-", "k-robust-"})
      if (c.rfind(prefix, 0) == 0) return c.substr(std::string(prefix).size());
    return c;
  };
  if (m.two_sided()) {
    std::string c = strip(criterion);
    if (c == "stable") return verify_certainly_stable(m, mt);
    if (c == "popular") return verify_two_sided(m, mt, TwoSidedCriterion::Popular, false);
    if (c == "dominant") return verify_two_sided(m, mt, TwoSidedCriterion::Dominant, false);
    if (c == "sum-popular") return verify_two_sided(m, mt, TwoSidedCriterion::Popular, true);
    if (c == "sum-dominant") return verify_two_sided(m, mt, TwoSidedCriterion::Dominant, true);
    throw UsageError("unknown criterion '" + criterion + "' for a two-sided market");
  }
  if (criterion == "sum-popular") return verify_ha(m, mt, HaCriterion::SumPopular);
  if (criterion == "k-robust-popular") return verify_ha(m, mt, HaCriterion::KRobustPopular);
  if (criterion == "popular" || criterion == "certainly-popular")
    return verify_ha(m, mt, m.flavor() == Flavor::Robust ? HaCriterion::KRobustPopular : HaCriterion::CertainlyPopular);
  throw UsageError("unknown criterion '" + criterion + "' for a house allocation market");
}

inline Property oracle_property(const std::string& name) {
  static const std::map<std::string, Property> names = {
      {"stable", Property::Stable},         {"popular", Property::Popular},
      {"dominant", Property::Dominant},     {"sum-popular", Property::SumPopular},
      {"sum-dominant", Property::SumDominant}};
  std::string n = name;
  for (const char* prefix : {"certainly-", "k-robust-"})
    if (n.rfind(prefix, 0) == 0) n = n.substr(std::string(prefix).size());
  if (n.size() > 3 && n.compare(n.size() - 3, 3, "-ha") == 0) n = n.substr(0, n.size() - 3);
  auto it = names.find(n);
  if (it == names.end()) throw UsageError("unknown property '" + name + "'");
  return it->second;
}

inline Model model_of(const std::string& s) {
  if (s == "two-sided") return Model::TwoSided;
  if (s == "ha") return Model::HouseAllocation;
  throw UsageError("unknown model '" + s + "'");
}

inline Flavor flavor_of(const std::string& s) {
  if (s == "layers") return Flavor::Layers;
  if (s == "independent") return Flavor::Independent;
  if (s == "robust") return Flavor::Robust;
  throw UsageError("unknown flavor '" + s + "'");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Popular, dominant and stable matchings under uncertain preferences"};
  app.name("popmatch");
  app.require_subcommand(1);

  std::string instance_path, matching_path, out_path, problem, criterion, property, mode, target;
  std::int64_t budget_matchings = EnumerationBudget{}.max_matchings, budget_profiles = EnumerationBudget{}.max_profiles;
  GeneratorConfig gen;
  std::string gen_model = "two-sided", gen_flavor = "layers";

  auto* solve_cmd = app.add_subcommand("solve", "Find a matching for a polynomial-time problem");
  solve_cmd->add_option("instance", instance_path, "Instance file")->required();
  solve_cmd->add_option("--problem", problem,
                        "stable | certainly-stable | certainly-dominant | k-robust-stable | k-robust-dominant | "
                        "popular-ha | certainly-popular-ha | k-robust-popular-ha")
      ->required();
  solve_cmd->add_option("--out", out_path, "Write the matching here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "Check a matching against a criterion");
  verify_cmd->add_option("instance", instance_path, "Instance file")->required();
  verify_cmd->add_option("matching", matching_path, "Matching file")->required();
  verify_cmd->add_option("--criterion", criterion,
                         "two-sided: stable | popular | dominant | sum-popular | sum-dominant; "
                         "ha: popular | sum-popular | k-robust-popular")
      ->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random instance");
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--model", gen_model, "two-sided | ha");
  gen_cmd->add_option("--n-a", gen.n_a, "Agents in A");
  gen_cmd->add_option("--n-b", gen.n_b, "Agents (houses) in B");
  gen_cmd->add_option("--list-min", gen.list_min, "Shortest A-side list");
  gen_cmd->add_option("--list-max", gen.list_max, "Longest A-side list");
  gen_cmd->add_option("--flavor", gen_flavor, "layers | independent | robust");
  gen_cmd->add_option("--layers", gen.layers, "Number of layers");
  gen_cmd->add_option("--set-size", gen.set_size, "Largest list set for uncertain agents");
  gen_cmd->add_flag("--equal-sets", gen.equal_sets, "Give every agent exactly --set-size lists");
  gen_cmd->add_option("--uncertain", gen.uncertain, "Number of uncertain agents (-1: all)");
  gen_cmd->add_option("--k", gen.k, "Swap budget for the robust flavor");
  gen_cmd->add_option("--cap-min", gen.cap_min, "Smallest house capacity");
  gen_cmd->add_option("--cap-max", gen.cap_max, "Largest house capacity");
  gen_cmd->add_option("--out", out_path, "Write the instance here instead of stdout");

  auto* oracle_cmd = app.add_subcommand("oracle", "Decide a property by exhaustive enumeration");
  oracle_cmd->add_option("instance", instance_path, "Instance file")->required();
  oracle_cmd->add_option("mode", mode, "check | exists")->required()->check(CLI::IsMember({"check", "exists"}));
  oracle_cmd->add_option("matching", matching_path, "Matching file (check mode)");
  oracle_cmd->add_option("--property", property,
                         "stable | popular | dominant | sum-popular | sum-dominant (certainly-/k-robust- prefixes allowed)")
      ->required();
  oracle_cmd->add_option("--budget-matchings", budget_matchings, "Largest number of matchings to enumerate");
  oracle_cmd->add_option("--budget-profiles", budget_profiles, "Largest number of profiles to enumerate");
  oracle_cmd->add_option("--out", out_path, "Write the matching found here instead of stdout");

  auto* convert_cmd = app.add_subcommand("convert", "Emit a reduced instance");
  convert_cmd->add_option("instance", instance_path, "Instance file")->required();
  convert_cmd->add_option("--to", target, "duplicated | uncertain | partial-order")
      ->required()
      ->check(CLI::IsMember({"duplicated", "uncertain", "partial-order"}));
  convert_cmd->add_option("--out", out_path, "Write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kHolds : kUsage;
  }

  auto emit = [&](const std::string& text) {
    if (out_path.empty()) out << text;
    else write_file(out_path, text);
  };

  try {
    if (*gen_cmd) {
      gen.model = model_of(gen_model);
      gen.flavor = flavor_of(gen_flavor);
      emit(serialize_instance(generate(gen)));
      return kHolds;
    }
    Market m = parse_instance(read_file(instance_path));
    if (*solve_cmd) {
      auto result = solve(m, problem);
      out << "problem: " << problem << "\n";
      if (!result) {
        out << "result: none exists\n";
        return kNone;
      }
      out << "result: found matching of size " << result->size() << "\n";
      emit(serialize_matching(m, *result));
      return kHolds;
    }
    if (*verify_cmd) {
      Matching mt = parse_matching(m, read_file(matching_path));
      Verdict v = verify(m, mt, criterion);
      out << "criterion: " << criterion << "\n";
      print_verdict(m, v, out);
      return v.holds ? kHolds : kNone;
    }
    if (*oracle_cmd) {
      EnumerationBudget budget{budget_matchings, budget_profiles};
      require(budget.max_matchings > 0 && budget.max_profiles > 0, "budgets must be positive");
      Property prop = oracle_property(property);
      out << "property: " << property_name(prop) << "\n";
      if (mode == "check") {
        require(!matching_path.empty(), "check mode needs a matching file");
        Verdict v = brute_check(m, parse_matching(m, read_file(matching_path)), prop, budget);
        print_verdict(m, v, out);
        return v.holds ? kHolds : kNone;
      }
      auto found = brute_exists(m, prop, budget);
      if (!found) {
        out << "result: none exists\n";
        return kNone;
      }
      out << "result: found matching of size " << found->size() << "\n";
      emit(serialize_matching(m, *found));
      return kHolds;
    }
    if (*convert_cmd) {
      if (target == "duplicated") emit(canonical(duplicated_json(duplicate_instance(m))));
      else if (target == "uncertain") emit(serialize_instance(robust_to_uncertain(m)));
      else emit(canonical(partial_order_json(aggregate_to_partial_order(m))));
      return kHolds;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace popmatch::cli
