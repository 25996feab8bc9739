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
#include "collab/transforms.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace collab {
namespace {

using namespace testing;

TEST(B2IR, CounterexampleExcludesAgentOne) {
  const Instance inst = counterexample_instance(8);
  const auto p = b2ir(gbs_policy(), inst);
  EXPECT_EQ(p->excluded(), AgentSet{0});
  const ComplexityReport r = evaluate(*p);
  const Rational solo = label_complexity(GbsPolicy(), inst, {0}).total;
  EXPECT_EQ(r.per_agent[0], solo);
  EXPECT_LT(r.per_agent[0], p->baseline_report().per_agent[0]);
  EXPECT_EQ(r.per_agent[1], p->baseline_report().per_agent[1]);
  EXPECT_EQ(p->id(), "b2ir:gbs");
}

TEST(B2IR, AgentOneNeverQueriesLiveInJointPhase) {
  const Instance inst = counterexample_instance(6);
  const auto p = b2ir(gbs_policy(), inst);
  for (HypothesisId h = 0; h < inst.hypothesis_count(); ++h) {
    const Trace solo = simulate(GbsPolicy(), inst, {0}, h);
    const Trace t = p->run(h);
    // The first steps are agent 1's own run, the rest the joint run.
    for (std::size_t j = solo.steps.size(); j < t.steps.size(); ++j) {
      if (t.steps[j].agent == 0) EXPECT_FALSE(t.steps[j].live);
    }
    EXPECT_EQ(t.labeling, inst.row_string(h));
  }
}

TEST(B2IR, EmptyExclusionMatchesBaseline) {
  const Instance inst = fig1();
  const auto p = b2ir(gbs_policy(), inst);
  EXPECT_TRUE(p->excluded().empty());
  EXPECT_EQ(evaluate(*p).per_agent, label_complexity(GbsPolicy(), inst, {0, 1}).per_agent);
}

TEST(B2IR, SingleAgent) {
  InstanceData d;
  d.hypotheses = {"00", "10", "11"};
  d.prior = {Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  d.agents = {{0, 1}};
  const Instance inst = validate_instance(d);
  const auto p = b2ir(gbs_policy(), inst);
  EXPECT_TRUE(p->excluded().empty());
  EXPECT_EQ(evaluate(*p).total, label_complexity(GbsPolicy(), inst, {0}).total);
}

TEST(B2IR, CostDecomposition) {
  for (const Instance& inst : corpus(60, 700, Limits{})) {
    for (const PolicyPtr& base : {gbs_policy(), random_policy(5)}) {
      const auto p = b2ir(base, inst);
      const ComplexityReport r = evaluate(*p);
      for (AgentId a = 0; a < inst.agent_count(); ++a) {
        const bool in_s = std::binary_search(p->excluded().begin(),
                                             p->excluded().end(), a);
        if (in_s) {
          EXPECT_EQ(r.per_agent[a], label_complexity(*base, inst, {a}).total);
        } else {
          EXPECT_EQ(r.per_agent[a], p->baseline_report().per_agent[a]);
        }
      }
    }
  }
}

TEST(PrunedRun, Fig1EverythingDetermined) {
  const Instance inst = fig1();
  const Evidence ev = Evidence::outside_agent(inst, 0, kAt04);
  const auto runs = pruned_run(GbsPolicy(), inst, 0, ev);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].first, kAt04);
  EXPECT_EQ(runs[0].second.queries(), 0u);
  EXPECT_EQ(runs[0].second.labeling, "011");
}

TEST(PrunedRun, NothingToPrune) {
  const Instance inst = validate_instance(independent_data());
  const Evidence ev = Evidence::outside_agent(inst, 0, 3);
  for (const auto& [h, t] : pruned_run(GbsPolicy(), inst, 0, ev)) {
    const Trace plain = simulate(GbsPolicy(), inst, {0}, h);
    EXPECT_EQ(t.steps, plain.steps);
  }
}

TEST(PrunedRun, CounterexampleFeedsDeterminedPoints) {
  const Instance inst = counterexample_instance(3);
  const Evidence ev(inst, {{1, 0, true}});
  const auto runs = pruned_run(GbsPolicy(), inst, 0, ev);
  ASSERT_EQ(runs.size(), 3u);
  for (const auto& [h, t] : runs) {
    EXPECT_GE(h, 7u);
    for (const Step& s : t.steps) {
      // (0,1,0) and (0,2,0) are fixed by the evidence.
      if (s.point == 1 || s.point == 2) EXPECT_FALSE(s.live);
    }
    EXPECT_EQ(t.labeling, inst.labeling_of(h, inst.agent_points(0)));
  }
}

TEST(PrunedRun, EvidenceMustCoverOthers) {
  const Instance inst = fig1();
  EXPECT_THROW(pruned_run(GbsPolicy(), inst, 0, Evidence(inst, {{1, kP03, false}})),
               Error);
}

TEST(PartialOpt, Fig1PhaseTwoIsFree) {
  const Instance inst = fig1();
  const auto p = partial_sir_opt(inst, 0);
  const ComplexityReport r = evaluate(*p);
  EXPECT_EQ(r.per_agent[0], 0);
  EXPECT_LT(r.per_agent[0], opt_cost(inst, inst.prior(), {0}));
  EXPECT_EQ(r.per_agent[1], opt_cost(inst, inst.prior(), {1}));
  EXPECT_EQ(p->id(), "psir-opt:1");
}

TEST(PartialOpt, IndependentAgentsGainNothing) {
  const Instance inst = validate_instance(independent_data());
  const ComplexityReport r = evaluate(*partial_sir_opt(inst, 0));
  EXPECT_EQ(r.per_agent[0], opt_cost(inst, inst.prior(), {0}));
}

TEST(PartialOpt, SharedPointsCostNothing) {
  InstanceData d;
  d.hypotheses = {"00", "01", "10", "11"};
  d.prior = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  d.agents = {{0, 1}, {0, 1}};
  const Instance inst = validate_instance(d);
  const ComplexityReport r = evaluate(*partial_sir_opt(inst, 1));
  EXPECT_EQ(r.per_agent[1], 0);
  EXPECT_EQ(r.per_agent[0], 2);
}

TEST(PartialPruned, Fig1StrictForAgentOne) {
  const Instance inst = fig1();
  const auto p = partial_sir_pruned(gbs_policy(), inst, 0);
  const ComplexityReport r = evaluate(*p);
  EXPECT_LT(r.per_agent[0], 2);
  EXPECT_LE(r.per_agent[1], 2);
  EXPECT_EQ(p->id(), "psir-pruned:gbs:1");
}

TEST(PartialPruned, TwoAgentsPhaseOneIsSoloBaseline) {
  const Instance inst = fig1();
  const ComplexityReport r = evaluate(*partial_sir_pruned(gbs_policy(), inst, 1));
  EXPECT_EQ(r.per_agent[0], label_complexity(GbsPolicy(), inst, {0}).total);
}

TEST(PartialPruned, IndependentAgentsWeakOnly) {
  const Instance inst = validate_instance(independent_data());
  EXPECT_FALSE(check_assumption2(inst, 0).holds);
  const ComplexityReport r = evaluate(*partial_sir_pruned(gbs_policy(), inst, 0));
  EXPECT_EQ(r.per_agent[0], label_complexity(GbsPolicy(), inst, {0}).total);
}

TEST(SirMixture, Weights) {
  const Instance inst = fig1();
  const ProtocolPtr ir = b2ir(gbs_policy(), inst);
  const Mixture mix = sir_mixture(ir, {partial_sir_pruned(gbs_policy(), inst, 0),
                                       partial_sir_pruned(gbs_policy(), inst, 1)},
                                  Rational(7, 10));
  ASSERT_EQ(mix.components().size(), 3u);
  EXPECT_EQ(mix.components()[0].weight, Rational(9, 10));
  EXPECT_EQ(mix.components()[1].weight, Rational(1, 20));
  EXPECT_EQ(mix.components()[2].weight, Rational(1, 20));
}

TEST(SirMixture, DegenerateSingleAgent) {
  InstanceData d;
  d.hypotheses = {"00", "10", "11"};
  d.prior = {Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  d.agents = {{0, 1}};
  const Instance inst = validate_instance(d);
  const ProtocolPtr ir = as_protocol(gbs_policy(), inst, {0});
  const Mixture mix = sir_mixture(ir, {ir}, Rational(1, 10));
  EXPECT_EQ(evaluate(mix).per_agent, evaluate(*ir).per_agent);
}

TEST(SirMixture, EpsilonRange) {
  const Instance inst = fig1();
  const ProtocolPtr ir = b2ir(gbs_policy(), inst);
  for (const Rational& eps : {Rational(0), Rational(-1), Rational(7), Rational(8)}) {
    try {
      sir_mixture(ir, {ir, ir}, eps);
      ADD_FAILURE() << to_string(eps);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidEpsilon);
    }
  }
}

TEST(SirMixture, CounterexampleStrict) {
  const Instance inst = counterexample_instance(3);
  const Rational eps(1, 10);
  const Mixture mix = sir_from_baseline(gbs_policy(), inst, eps);
  const IRVerdict v = verify_ir(inst, mix, GbsPolicy());
  EXPECT_TRUE(v.strictly_individually_rational());
  EXPECT_LE(evaluate(mix).total, evaluate(*b2ir(gbs_policy(), inst)).total + eps);
}

TEST(SirMixture, OptBasedIsStrictOnFig1) {
  const Instance inst = fig1();
  const Mixture mix = sir_from_opt(inst, Rational(1, 10));
  const ComplexityReport r = evaluate(mix);
  for (AgentId a : {0, 1}) {
    EXPECT_LT(r.per_agent[a], opt_cost(inst, inst.prior(), {a}));
  }
}

TEST(Assumption1, Examples) {
  const Instance inst = fig1();
  const AssumptionReport r = check_assumption1(inst, 0);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(*r.gap, 2);

  const AssumptionReport ind = check_assumption1(validate_instance(independent_data()), 0);
  EXPECT_FALSE(ind.holds);
  EXPECT_EQ(*ind.gap, 0);

  InstanceData d;
  d.hypotheses = {"00", "01", "10", "11"};
  d.prior = {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 8)};
  d.agents = {{0, 1}, {0, 1}};
  const Instance dup = validate_instance(d);
  EXPECT_EQ(*check_assumption1(dup, 0).gap, opt_cost(dup, dup.prior(), {0}));
}

TEST(Assumption2, Examples) {
  const Instance inst = fig1();
  const AssumptionReport r = check_assumption2(inst, 0);
  EXPECT_TRUE(r.holds);
  // Every row pins the threshold here, so the smallest index is reported.
  EXPECT_EQ(r.witness, kAt02);
  EXPECT_EQ(labelings_of(inst, inst.agent_points(0), Evidence::outside_agent(inst, 0, kAt04))
                .size(),
            1u);

  InstanceData d;
  d.hypotheses = {"00", "01"};
  d.prior = {Rational(1, 2), Rational(1, 2)};
  d.agents = {{0}, {1}};
  EXPECT_FALSE(check_assumption2(validate_instance(d), 0).holds);

  d.agents = {{0, 1}};
  EXPECT_FALSE(check_assumption2(validate_instance(d), 0).holds);
}

TEST(Assumption2, WitnessMatchesOracle) {
  for (const Instance& inst : corpus(80, 900, Limits{})) {
    const Table t(inst.data());
    for (AgentId a = 0; a < inst.agent_count(); ++a) {
      const auto& own = inst.agent_points(a);
      const std::vector<std::size_t> mine(own.begin(), own.end());
      const std::size_t full = labelings(t, mine, t.all_rows()).size();
      std::optional<HypothesisId> first;
      for (HypothesisId h = 0; h < inst.hypothesis_count() && !first; ++h) {
        if (labelings(t, mine, agreeing(t, inst.points_outside(a), h)).size() < full) {
          first = h;
        }
      }
      const AssumptionReport r = check_assumption2(inst, a);
      EXPECT_EQ(r.witness, first);
      EXPECT_EQ(r.holds, first.has_value());
    }
  }
}

}  // namespace
}  // namespace collab
