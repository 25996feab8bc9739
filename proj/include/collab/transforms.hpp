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

#ifndef COLLAB_TRANSFORMS_HPP_
#define COLLAB_TRANSFORMS_HPP_

// Constructions that turn a baseline policy into individually rational (IR)
// and strictly individually rational (SIR) collaboration protocols.

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "collab/evaluation.hpp"
#include "collab/model.hpp"
#include "collab/opt.hpp"
#include "collab/policy.hpp"
#include "collab/protocol.hpp"

namespace collab {

// Baseline-to-IR transform.
//
// Agents whose collaborative cost under the baseline exceeds their solo cost
// form the set S. Each member of S first runs the baseline alone on its own
// points (live queries). The baseline is then run over the whole collection;
// any query it assigns to a member of S is answered from that member's
// recovered labels at no cost. Members of S therefore pay exactly their solo
// cost and everyone else pays exactly their collaborative cost.
class B2IRProtocol final : public Protocol {
 public:
  B2IRProtocol(PolicyPtr baseline, const Instance& instance,
               AgentSet participants);

  std::string id() const override { return "b2ir:" + baseline_->id(); }
  const Instance& instance() const override { return instance_; }
  const AgentSet& participants() const override { return participants_; }
  Trace run(HypothesisId target) const override;

  // Agents that do not benefit from running the baseline collaboratively.
  const AgentSet& excluded() const { return excluded_; }
  const ComplexityReport& baseline_report() const { return collaborative_; }
  // Q(A, pi, {X_i}) per agent; zero for non-participants.
  const std::vector<Rational>& individual_costs() const { return individual_; }

 private:
  PolicyPtr baseline_;
  const Instance& instance_;
  AgentSet participants_;
  AgentSet excluded_;
  ComplexityReport collaborative_;
  std::vector<Rational> individual_;
};

std::shared_ptr<const B2IRProtocol> b2ir(PolicyPtr baseline,
                                         const Instance& instance);
std::shared_ptr<const B2IRProtocol> b2ir(PolicyPtr baseline,
                                         const Instance& instance,
                                         AgentSet participants);

// Runs the baseline on agent i's points alone, feeding at zero cost every
// label already implied by `evidence` together with the run's own history.
// `evidence` must label all of X_{-i}. Returns a trace for every target
// consistent with the evidence.
std::vector<std::pair<HypothesisId, Trace>> pruned_run(const Policy& baseline,
                                                       const Instance& instance,
                                                       AgentId agent,
                                                       const Evidence& evidence);

// Single-target form; `known` is the version space fixed by the labels of
// X_{-i}.
Trace pruned_trace(const Policy& baseline, const Instance& instance,
                   AgentId agent, const VersionSpace& known, HypothesisId target);

// Two-phase protocol favoring agent i: phase 1 recovers the labels of X_{-i}
// using only the other agents, phase 2 lets agent i finish its own points
// using what phase 1 revealed.
class PartialSIRProtocol final : public Protocol {
 public:
  enum class Variant { kPosteriorOpt, kPrunedBaseline };

  // Phase 1 is OPT over the other agents, phase 2 is OPT under the
  // posterior given X_{-i}. Throws kCapExceeded when either phase is too
  // large for exhaustive search.
  static std::shared_ptr<const PartialSIRProtocol> with_posterior_opt(
      const Instance& instance, AgentId favored,
      OwnerRule rule = OwnerRule::kSmallestIndex,
      std::size_t cap = kDefaultOptCap);

  // Phase 1 is B2IR(baseline) over the other agents, phase 2 is the pruned
  // baseline run for agent i.
  static std::shared_ptr<const PartialSIRProtocol> with_pruned_baseline(
      PolicyPtr baseline, const Instance& instance, AgentId favored);

  std::string id() const override;
  const Instance& instance() const override { return instance_; }
  const AgentSet& participants() const override { return participants_; }
  Trace run(HypothesisId target) const override;

  AgentId favored() const { return favored_; }
  Variant variant() const { return variant_; }

 private:
  PartialSIRProtocol(const Instance& instance, AgentId favored, Variant variant);

  // Rows agreeing with `target` on X_{-i}.
  VersionSpace outside_class(HypothesisId target) const;

  const Instance& instance_;
  AgentId favored_;
  Variant variant_;
  AgentSet participants_;
  AgentSet others_;
  std::vector<PointId> outside_points_;
  ProtocolPtr phase1_;  // null when there are no other agents
  PolicyPtr baseline_;  // pruned variant
  // Posterior-OPT variant: one tree per class of X_{-i} labelings.
  std::map<Labeling, std::shared_ptr<const TreePolicy>> phase2_trees_;
};

std::shared_ptr<const PartialSIRProtocol> partial_sir_opt(
    const Instance& instance, AgentId favored,
    OwnerRule rule = OwnerRule::kSmallestIndex,
    std::size_t cap = kDefaultOptCap);

std::shared_ptr<const PartialSIRProtocol> partial_sir_pruned(
    PolicyPtr baseline, const Instance& instance, AgentId favored);

// Weight 1 - eps/m on `ir`, eps/(k m) on each partial, with m the pool size
// and k = partials.size(). Throws kInvalidEpsilon unless 0 < eps < m.
Mixture sir_mixture(ProtocolPtr ir, const std::vector<ProtocolPtr>& partials,
                    const Rational& epsilon);

// B2IR(baseline) mixed with partial_sir_pruned(baseline, i) for every agent.
Mixture sir_from_baseline(PolicyPtr baseline, const Instance& instance,
                          const Rational& epsilon);

// OPT mixed with partial_sir_opt(i) for every agent.
Mixture sir_from_opt(const Instance& instance, const Rational& epsilon,
                     OwnerRule rule = OwnerRule::kSmallestIndex,
                     std::size_t cap = kDefaultOptCap);

struct AssumptionReport {
  AgentId agent;
  bool holds;
  std::optional<Rational> gap;              // posterior-information gap
  std::optional<HypothesisId> witness;      // row with |H(X_i|h)| < |H(X_i)|
};

// gap = Q*(pi, {X_i}) - E_h[Q*(pi_{h,-i}, {X_i})]; holds iff gap > 0.
AssumptionReport check_assumption1(const Instance& instance, AgentId agent,
                                   std::size_t cap = kDefaultOptCap);

// Smallest-index row h with |H(X_i|h)| < |H(X_i)|, if any.
AssumptionReport check_assumption2(const Instance& instance, AgentId agent);

}  // namespace collab

#endif  // COLLAB_TRANSFORMS_HPP_
