#include <gtest/gtest.h>

#include "support.hpp"

using namespace popmatch;
using namespace popmatch::test;

namespace {

const char* kOneEdge = R"({
  "model": "two-sided",
  "agents_a": [{"id": "a1"}],
  "agents_b": [{"id": "b1"}],
  "scenario": {"type": "layers", "profiles": [{"a1": ["b1"], "b1": ["a1"]}]}
})";

}  // namespace

TEST(Instance, MinimalOneEdge) {
  Market m = parse_instance(kOneEdge);
  EXPECT_EQ(m.num_a(), 1);
  EXPECT_EQ(m.num_b(), 1);
  EXPECT_EQ(m.num_edges(), 1);
  EXPECT_TRUE(m.two_sided());
  EXPECT_EQ(m.flavor(), Flavor::Layers);
}

TEST(Instance, ListOmittingNeighborRejected) {
  // a1 only lists b1 but b2 lists a1, so the edge (a1,b2) exists.
  const char* text = R"({
    "model": "two-sided",
    "agents_a": [{"id": "a1"}],
    "agents_b": [{"id": "b1"}, {"id": "b2"}],
    "scenario": {"type": "layers", "profiles": [{"a1": ["b1"], "b1": ["a1"], "b2": ["a1"]}]}
  })";
  EXPECT_THROW(parse_instance(text), InstanceError);
}

TEST(Instance, ValidationErrors) {
  EXPECT_THROW(parse_instance("{"), InstanceError);
  EXPECT_THROW(parse_instance(R"({"model":"x","agents_a":[],"agents_b":[],"scenario":{"type":"layers","profiles":[{}]}})"),
               InstanceError);
  // duplicate ids
  EXPECT_THROW(parse_instance(R"({"model":"two-sided","agents_a":[{"id":"a"}],"agents_b":[{"id":"a"}],
                                  "scenario":{"type":"layers","profiles":[{}]}})"),
               InstanceError);
  // two-sided capacity above one
  EXPECT_THROW(parse_instance(R"({"model":"two-sided","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1","capacity":2}],
                                  "scenario":{"type":"layers","profiles":[{"a1":["b1"],"b1":["a1"]}]}})"),
               InstanceError);
  // unknown key
  EXPECT_THROW(parse_instance(R"({"model":"ha","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1"}],"extra":1,
                                  "scenario":{"type":"layers","profiles":[{"a1":["b1"]}]}})"),
               InstanceError);
  // houses carry no lists
  EXPECT_THROW(parse_instance(R"({"model":"ha","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1"}],
                                  "scenario":{"type":"layers","profiles":[{"a1":["b1"],"b1":["a1"]}]}})"),
               InstanceError);
  // layers must agree on acceptable sets
  EXPECT_THROW(parse_instance(R"({"model":"ha","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1"},{"id":"b2"}],
                                  "scenario":{"type":"layers","profiles":[{"a1":["b1","b2"]},{"a1":["b1"]}]}})"),
               InstanceError);
  // non-positive capacity
  EXPECT_THROW(parse_instance(R"({"model":"ha","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1","capacity":0}],
                                  "scenario":{"type":"layers","profiles":[{"a1":["b1"]}]}})"),
               InstanceError);
}

TEST(Instance, HaIndependentRoundTripsByteIdentically) {
  const char* text = R"({
    "model": "ha",
    "agents_a": [{"id": "a1"}, {"id": "a2"}],
    "agents_b": [{"id": "b1", "capacity": 2}, {"id": "b2", "capacity": 1}],
    "scenario": {"type": "independent",
                 "sets": {"a1": [["b1", "b2"], ["b2", "b1"]], "a2": [["b2", "b1"], ["b1", "b2"]]}}
  })";
  Market m = parse_instance(text);
  EXPECT_EQ(m.capacity(m.vertex("b1")), 2);
  std::string once = serialize_instance(m);
  EXPECT_EQ(serialize_instance(parse_instance(once)), once);
}

TEST(Instance, GeneratorOutputsRoundTrip) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    GeneratorConfig c = config(seed, seed % 2 ? Model::TwoSided : Model::HouseAllocation, 1 + seed % 5, 1 + seed % 4);
    c.flavor = static_cast<Flavor>(seed % 3);
    c.layers = 1 + seed % 3;
    c.set_size = 1 + seed % 3;
    c.k = seed % 3;
    if (c.model == Model::HouseAllocation) c.cap_max = 3;
    Market m = generate(c);
    std::string text = serialize_instance(m);
    Market back = parse_instance(text);
    EXPECT_EQ(serialize_instance(back), text) << seed;
    EXPECT_EQ(back.num_edges(), m.num_edges());
  }
}

TEST(Instance, ScenarioShapes) {
  Market layers = parse_instance(R"({"model":"ha","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1"},{"id":"b2"}],
      "scenario":{"type":"layers","profiles":[{"a1":["b1","b2"]},{"a1":["b2","b1"]}]}})");
  EXPECT_EQ(layers.family(0).size(), 2u);
  EXPECT_FALSE(layers.single_profile().has_value());
  Market robust = parse_instance(R"({"model":"two-sided","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1"}],
      "scenario":{"type":"robust","k":2,"profile":{"a1":["b1"],"b1":["a1"]}}})");
  EXPECT_EQ(robust.scenario().k, 2);
  EXPECT_EQ(robust.flavor(), Flavor::Robust);
  EXPECT_THROW(parse_instance(R"({"model":"two-sided","agents_a":[{"id":"a1"}],"agents_b":[{"id":"b1"}],
      "scenario":{"type":"robust","k":-1,"profile":{"a1":["b1"],"b1":["a1"]}}})"),
               InstanceError);
}

TEST(Instance, LastResortKey) {
  Market m = parse_instance(R"({"model":"ha","agents_a":[{"id":"a1"}],
      "agents_b":[{"id":"b1"},{"id":"$last_resort"}],
      "last_resort":"$last_resort",
      "scenario":{"type":"layers","profiles":[{"a1":["b1","$last_resort"]}]}})");
  ASSERT_TRUE(m.last_resort().has_value());
  EXPECT_EQ(m.id(*m.last_resort()), kLastResortId);
  EXPECT_EQ(serialize_instance(parse_instance(serialize_instance(m))), serialize_instance(m));
}

TEST(Matching, ParseAndSerialize) {
  Market m = classic_2x2();
  Matching mt = parse_matching(m, R"([["a2","b1"],["a1","b2"]])");
  EXPECT_EQ(mt, matching_from_pairs(m, {{"a1", "b2"}, {"a2", "b1"}}));
  EXPECT_EQ(serialize_matching(m, mt), "[[\"a1\",\"b2\"],[\"a2\",\"b1\"]]\n");
  EXPECT_EQ(parse_matching(m, "[]"), Matching{});
  EXPECT_THROW(parse_matching(m, R"([["a1","b1"],["a2","b1"]])"), InstanceError);
  EXPECT_THROW(parse_matching(m, R"([["a1","a2"]])"), InstanceError);
}

TEST(Matching, CapacityChecked) {
  Market m = ha_builder(3, {2}).layers({{{"a1", {"b1"}}, {"a2", {"b1"}}, {"a3", {"b1"}}}}).build();
  EXPECT_TRUE(m.is_matching(matching_from_pairs(m, {{"a1", "b1"}, {"a2", "b1"}})));
  EXPECT_THROW(matching_from_pairs(m, {{"a1", "b1"}, {"a2", "b1"}, {"a3", "b1"}}), InstanceError);
}

TEST(Generator, Deterministic) {
  GeneratorConfig c = config(1, Model::TwoSided, 4, 4);
  EXPECT_EQ(serialize_instance(generate(c)), serialize_instance(generate(c)));
  c.seed = 2;
  EXPECT_NE(serialize_instance(generate(c)), serialize_instance(generate(config(1, Model::TwoSided, 4, 4))));
}

TEST(Generator, EmptySide) {
  Market m = generate(config(3, Model::TwoSided, 0, 3));
  EXPECT_EQ(m.num_a(), 0);
  EXPECT_EQ(m.num_edges(), 0);
  EXPECT_EQ(serialize_instance(parse_instance(serialize_instance(m))), serialize_instance(m));
}

TEST(Generator, RobustEcho) {
  GeneratorConfig c = config(5, Model::TwoSided, 3, 3);
  c.flavor = Flavor::Robust;
  c.k = 2;
  auto j = json::parse(serialize_instance(generate(c)));
  EXPECT_EQ(j["scenario"]["type"], "robust");
  EXPECT_EQ(j["scenario"]["k"], 2);
}

TEST(Generator, InconsistentConfigRejected) {
  GeneratorConfig c = config(1, Model::TwoSided, 2, 2);
  c.cap_max = 2;
  EXPECT_THROW(generate(c), InstanceError);
  c = config(1, Model::TwoSided, 2, 2);
  c.list_min = 3;
  c.list_max = 2;
  EXPECT_THROW(generate(c), InstanceError);
}
