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
#include "collab/evaluation.hpp"
#include "collab/instances.hpp"
#include "collab/opt.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace collab {
namespace {

using namespace testing;

TEST(Opt, Fig1CostIsTwo) {
  const Instance inst = fig1();
  const OptResult r = opt_tree(inst, inst.prior(), {0, 1});
  EXPECT_EQ(r.cost, 2);
  EXPECT_EQ(tree_complexity(r.tree, inst).total, 2);
  EXPECT_EQ(brute_force_opt(inst, inst.prior(), {0, 1}), 2);
}

TEST(Opt, Degenerate) {
  InstanceData d;
  d.hypotheses = {"01"};
  d.prior = {Rational(1)};
  d.agents = {{0, 1}};
  const Instance one = validate_instance(d);
  EXPECT_EQ(opt_cost(one, one.prior(), {0}), 0);
  EXPECT_EQ(brute_force_opt(one, one.prior(), {0}), 0);

  d.hypotheses = {"01", "11"};
  d.prior = {Rational(1, 5), Rational(4, 5)};
  const Instance two = validate_instance(d);
  EXPECT_EQ(opt_cost(two, two.prior(), {0}), 1);
}

TEST(BruteForce, Fig1TwoThresholds) {
  const Instance inst = fig1();
  const Weights w({Rational(1, 2), Rational(1, 2), 0, 0});
  EXPECT_EQ(brute_force_opt(inst, w, {0, 1}), 1);
  EXPECT_EQ(opt_cost(inst, w, {0, 1}), 1);
}

TEST(Opt, CapIsEnforced) {
  RandomInstanceParams p;
  p.pool_size = 6;
  p.class_size = 20;
  p.agents = 2;
  const Instance inst = random_instance(p);
  try {
    opt_cost(inst, inst.prior(), {0, 1});
    FAIL() << "expected CapExceeded";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
  }
  EXPECT_NO_THROW(opt_cost(inst, inst.prior(), {0, 1}, 32));
}

TEST(Opt, MatchesOracleAndBruteForce) {
  Limits lim;
  lim.max_points = 5;
  lim.max_rows = 5;
  lim.max_agents = 2;
  for (const Instance& inst : corpus(150, 1000, lim)) {
    const Table t(inst.data());
    const AgentSet all = all_agents(inst.agent_count());
    const Rational want = testing::opt_cost(t, t.prior(), all);
    EXPECT_EQ(collab::opt_cost(inst, inst.prior(), all), want);
    EXPECT_EQ(brute_force_opt(inst, inst.prior(), all), want);
  }
}

TEST(OptPolicy, AgreesWithTreeAndNeverLoses) {
  Limits lim;
  lim.max_points = 6;
  lim.max_rows = 10;
  for (const Instance& inst : corpus(40, 2000, lim)) {
    const AgentSet all = all_agents(inst.agent_count());
    const OptResult r = opt_tree(inst, inst.prior(), all);
    const ComplexityReport via_policy = label_complexity(OptPolicy(), inst, all);
    EXPECT_EQ(via_policy.total, r.cost);
    EXPECT_EQ(tree_complexity(r.tree, inst).per_agent, via_policy.per_agent);
    EXPECT_LE(r.cost, label_complexity(GbsPolicy(), inst, all).total);
    EXPECT_LE(r.cost, label_complexity(RandomPolicy(9), inst, all).total);
  }
}

TEST(OptPolicy, LeastLoadedKeepsTotal) {
  const Instance inst = fig1();
  const ComplexityReport r =
      label_complexity(OptPolicy(OwnerRule::kLeastLoaded), inst, {0, 1});
  EXPECT_EQ(r.total, 2);
  EXPECT_EQ(OptPolicy(OwnerRule::kLeastLoaded).id(), "opt@least-loaded");
}

}  // namespace
}  // namespace collab
