// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "collab/error.hpp"
#include "collab/instances.hpp"
#include "collab/policy.hpp"
#include "collab/query_tree.hpp"
#include "fixtures.hpp"

namespace collab {
namespace {

using namespace testing;

std::vector<PointId> points_in(const Trace& t) {
  std::vector<PointId> out;
  for (const Step& s : t.steps) out.push_back(s.point);
  return out;
}

TEST(GbsChoose, CounterexampleOpening) {
  const Instance inst = counterexample_instance(3);
  const VersionSpace all = VersionSpace::full(inst.hypothesis_count());
  EXPECT_EQ(gbs_choose(inst, inst.prior(), {0, 1}, all), PointId{0});
  const VersionSpace after = *restrict(inst, all, 0, false);
  EXPECT_EQ(gbs_choose(inst, inst.prior(), {0, 1}, after), PointId{3});
}

TEST(GbsChoose, Fig1TiesGoToSmallestIndex) {
  const Instance inst = fig1();
  EXPECT_EQ(gbs_choose(inst, inst.prior(), {0, 1}, VersionSpace::full(4)), kP045);
  const std::vector<HypothesisId> one{kAt04};
  EXPECT_FALSE(gbs_choose(inst, inst.prior(), {0, 1}, VersionSpace::of(4, one)));
}

TEST(GbsChoose, ScaleInvariant) {
  const Instance inst = counterexample_instance(4);
  std::vector<Rational> scaled = inst.prior().masses();
  for (auto& w : scaled) w *= 7;
  const Weights w(scaled);
  VersionSpace vs = VersionSpace::full(inst.hypothesis_count());
  for (PointId x : {0, 3}) {
    EXPECT_EQ(gbs_choose(inst, w, {0, 1}, vs), gbs_choose(inst, inst.prior(), {0, 1}, vs));
    vs = *restrict(inst, vs, x, false);
  }
}

TEST(OwnerOf, Rules) {
  const Instance cex = counterexample_instance(3);
  EXPECT_EQ(owner_of(cex, {0, 1}, 0), AgentId{1});
  EXPECT_EQ(owner_of(cex, {0, 1}, 4), AgentId{0});
  EXPECT_THROW(owner_of(cex, {0}, 0), Error);

  InstanceData d;
  d.hypotheses = {"0", "1"};
  d.prior = {Rational(1, 2), Rational(1, 2)};
  d.agents = {{0}, {0}, {0}};
  const Instance shared = validate_instance(d);
  EXPECT_EQ(owner_of(shared, {0, 2}, 0), AgentId{0});
  const std::vector<std::size_t> load{3, 0, 1};
  EXPECT_EQ(owner_of(shared, {0, 2}, 0, OwnerRule::kLeastLoaded, load), AgentId{2});
  EXPECT_EQ(owner_of(shared, {0, 1, 2}, 0, OwnerRule::kLeastLoaded, load), AgentId{1});
}

TEST(Simulate, CounterexampleCollaborativeTrace) {
  const Instance inst = counterexample_instance(3);
  const Trace t = simulate(GbsPolicy(), inst, {0, 1}, 0);
  EXPECT_EQ(points_in(t), (std::vector<PointId>{0, 3, 4, 5}));
  EXPECT_EQ(t.per_agent, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(t.labeling, "000000");
}

TEST(Simulate, CounterexampleIndividualTrace) {
  const Instance inst = counterexample_instance(3);
  const Trace t = simulate(GbsPolicy(), inst, {0}, 0);
  EXPECT_EQ(points_in(t), (std::vector<PointId>{3, 1, 2}));
  EXPECT_EQ(t.labeling, "00000");
}

TEST(Simulate, SingleHypothesisStopsAtOnce) {
  InstanceData d;
  d.hypotheses = {"101"};
  d.prior = {Rational(1)};
  d.agents = {{0, 1, 2}};
  const Instance inst = validate_instance(d);
  for (const PolicyPtr& p : {gbs_policy(), random_policy(3), bisect_policy()}) {
    EXPECT_TRUE(simulate(*p, inst, {0}, 0).steps.empty());
  }
}

TEST(Simulate, RandomIsReproducibleAndCorrect) {
  const Instance inst = fig1();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RandomPolicy p(seed);
    for (HypothesisId h = 0; h < 4; ++h) {
      const Trace a = simulate(p, inst, {0, 1}, h);
      const Trace b = simulate(p, inst, {0, 1}, h);
      EXPECT_EQ(a.steps, b.steps);
      EXPECT_LE(a.steps.size(), 7u);
      EXPECT_EQ(a.labeling, inst.row_string(h));
    }
  }
}

// Queries the first participant point forever.
class Stubborn final : public Policy {
 public:
  std::string id() const override { return "stubborn"; }
  std::optional<Query> next(const QueryState& s) const override {
    return Query{s.participants.front(), s.participant_points.front()};
  }
};

// Asks a non-participant.
class Outsider final : public Policy {
 public:
  std::string id() const override { return "outsider"; }
  std::optional<Query> next(const QueryState&) const override {
    return Query{1, kP03};
  }
};

class Quitter final : public Policy {
 public:
  std::string id() const override { return "quitter"; }
  std::optional<Query> next(const QueryState&) const override { return std::nullopt; }
};

TEST(Simulate, ViolationsAreReported) {
  const Instance inst = fig1();
  auto code = [&](const Policy& p, AgentSet parts) {
    try {
      simulate(p, inst, parts, kAt04);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code(Stubborn(), {0, 1}), ErrorCode::kPolicyViolation);
  EXPECT_EQ(code(Outsider(), {0}), ErrorCode::kPolicyViolation);
  EXPECT_EQ(code(Quitter(), {0}), ErrorCode::kPolicyViolation);
}

TEST(BuildTree, BisectReproducesFig1) {
  const Instance inst = fig1();
  const QueryTree tree = build_tree(BisectPolicy(), inst, {0, 1});
  EXPECT_EQ(tree.internal_count(), 3u);
  EXPECT_EQ(tree.leaf_count(), 4u);
  EXPECT_EQ(tree.root().query, (Query{0, kP05}));
  const TreeNode& neg = tree.node(tree.root().child[0]);
  const TreeNode& pos = tree.node(tree.root().child[1]);
  EXPECT_EQ(neg.query, (Query{1, kP07}));
  EXPECT_EQ(pos.query, (Query{1, kP03}));
}

TEST(BuildTree, PathsMatchSimulation) {
  for (int n = 2; n <= 5; ++n) {
    const Instance inst = counterexample_instance(n);
    for (const PolicyPtr& p : {gbs_policy(), random_policy(11), bisect_policy()}) {
      const QueryTree tree = build_tree(*p, inst, {0, 1});
      for (HypothesisId h = 0; h < inst.hypothesis_count(); ++h) {
        const Trace t = simulate(*p, inst, {0, 1}, h);
        std::vector<Query> expected;
        for (const Step& s : t.steps) expected.push_back({s.agent, s.point});
        EXPECT_EQ(tree.path(inst, h), expected);
      }
    }
  }
}

TEST(BuildTree, CounterexampleGbsShape) {
  const Instance inst = counterexample_instance(3);
  const QueryTree tree = build_tree(GbsPolicy(), inst, {0, 1});
  EXPECT_EQ(tree.root().query, (Query{1, 0}));
  int node = tree.root().child[0];
  for (PointId x : {3, 4, 5}) {
    ASSERT_GE(node, 0);
    EXPECT_EQ(tree.node(node).query->point, x);
    node = tree.node(node).child[0];
  }
  EXPECT_TRUE(tree.node(node).is_leaf());
}

TEST(BuildTree, SingleHypothesisIsLeaf) {
  InstanceData d;
  d.hypotheses = {"10"};
  d.prior = {Rational(1)};
  d.agents = {{0, 1}};
  const Instance inst = validate_instance(d);
  const QueryTree tree = build_tree(GbsPolicy(), inst, {0});
  EXPECT_EQ(tree.nodes().size(), 1u);
  EXPECT_TRUE(tree.root().is_leaf());
  EXPECT_EQ(to_dot(tree, inst), "digraph query_tree {\n  n0 [shape=box, label=\"10\"];\n}\n");
}

TEST(TreePolicy, FixtureReplays) {
  const Instance inst = fig1();
  const TreePolicy p(fig1_fixture_tree(inst), "fig1");
  for (HypothesisId h = 0; h < 4; ++h) {
    const Trace t = simulate(p, inst, {0, 1}, h);
    EXPECT_EQ(t.per_agent, (std::vector<std::size_t>{1, 1}));
  }
}

TEST(Dot, Fig1Golden) {
  const Instance inst = fig1();
  const std::string expected =
      "digraph query_tree {\n"
      "  n0 [label=\"1:0.5\"];\n"
      "  n0 -> n1 [label=\"0\"];\n"
      "  n0 -> n4 [label=\"1\"];\n"
      "  n1 [label=\"2:0.7\"];\n"
      "  n1 -> n2 [label=\"0\"];\n"
      "  n1 -> n3 [label=\"1\"];\n"
      "  n2 [shape=box, label=\"0000000\"];\n"
      "  n3 [shape=box, label=\"0000011\"];\n"
      "  n4 [label=\"2:0.3\"];\n"
      "  n4 -> n5 [label=\"0\"];\n"
      "  n4 -> n6 [label=\"1\"];\n"
      "  n5 [shape=box, label=\"0011111\"];\n"
      "  n6 [shape=box, label=\"1111111\"];\n"
      "}\n";
  EXPECT_EQ(to_dot(build_tree(BisectPolicy(), inst, {0, 1}), inst), expected);
  EXPECT_EQ(to_dot(fig1_fixture_tree(inst), inst), expected);
}

TEST(PolicyIds, Stable) {
  EXPECT_EQ(GbsPolicy().id(), "gbs");
  EXPECT_EQ(RandomPolicy(5).id(), "random:5");
  EXPECT_EQ(BisectPolicy(OwnerRule::kLeastLoaded).id(), "bisect@least-loaded");
}

}  // namespace
}  // namespace collab
