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

#include "collab/transforms.hpp"

#include <algorithm>

#include "collab/error.hpp"

namespace collab {
namespace {

void append(Trace& into, const Trace& from) {
  into.steps.insert(into.steps.end(), from.steps.begin(), from.steps.end());
  for (std::size_t a = 0; a < from.per_agent.size(); ++a) {
    into.per_agent[a] += from.per_agent[a];
  }
}

bool member(const AgentSet& set, AgentId a) {
  return std::binary_search(set.begin(), set.end(), a);
}

void check_agent(const Instance& instance, AgentId agent) {
  if (agent >= instance.agent_count()) {
    throw Error(ErrorCode::kInvalidArgument,
                "agent " + std::to_string(agent + 1) + " does not exist");
  }
}

// Rows that agree with `target` on every listed point.
VersionSpace agreeing_rows(const Instance& instance,
                           std::span<const PointId> points, HypothesisId target) {
  VersionSpace vs = VersionSpace::full(instance.hypothesis_count());
  for (PointId x : points) vs = *restrict(instance, vs, x, instance.label(target, x));
  return vs;
}

}  // namespace

B2IRProtocol::B2IRProtocol(PolicyPtr baseline, const Instance& instance,
                           AgentSet participants)
    : baseline_(std::move(baseline)),
      instance_(instance),
      participants_(std::move(participants)),
      individual_(instance.agent_count(), Rational(0)) {
  if (participants_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no participating agents");
  }
  for (AgentId a : participants_) check_agent(instance_, a);
  collaborative_ = label_complexity(*baseline_, instance_, participants_);
  for (AgentId a : participants_) {
    individual_[a] = label_complexity(*baseline_, instance_, {a}).total;
    if (collaborative_.per_agent[a] > individual_[a]) excluded_.push_back(a);
  }
}

Trace B2IRProtocol::run(HypothesisId target) const {
  Trace trace;
  trace.per_agent.assign(instance_.agent_count(), 0);
  for (AgentId a : excluded_) {
    append(trace, simulate(*baseline_, instance_, {a}, target));
  }
  const FeedRule feed = [this](const Query& q, const VersionSpace&) {
    return member(excluded_, q.agent);
  };
  Trace joint = run_policy(*baseline_, instance_, instance_.prior(), participants_,
                           VersionSpace::full(instance_.hypothesis_count()),
                           target, feed);
  append(trace, joint);
  trace.labeling = std::move(joint.labeling);
  return trace;
}

std::shared_ptr<const B2IRProtocol> b2ir(PolicyPtr baseline,
                                         const Instance& instance) {
  return b2ir(std::move(baseline), instance, all_agents(instance.agent_count()));
}

std::shared_ptr<const B2IRProtocol> b2ir(PolicyPtr baseline,
                                         const Instance& instance,
                                         AgentSet participants) {
  return std::make_shared<B2IRProtocol>(std::move(baseline), instance,
                                        std::move(participants));
}

Trace pruned_trace(const Policy& baseline, const Instance& instance,
                   AgentId agent, const VersionSpace& known, HypothesisId target) {
  check_agent(instance, agent);
  if (!known.contains(target)) {
    throw Error(ErrorCode::kInconsistentEvidence,
                "target " + std::to_string(target) + " contradicts the evidence");
  }
  // A label is free when every row still possible for the run and the
  // evidence agrees on it.
  const FeedRule feed = [&](const Query& q, const VersionSpace& current) {
    return !is_split(instance, current & known, q.point);
  };
  return run_policy(baseline, instance, instance.prior(), {agent},
                    VersionSpace::full(instance.hypothesis_count()), target, feed);
}

std::vector<std::pair<HypothesisId, Trace>> pruned_run(const Policy& baseline,
                                                       const Instance& instance,
                                                       AgentId agent,
                                                       const Evidence& evidence) {
  check_agent(instance, agent);
  for (PointId x : instance.points_outside(agent)) {
    if (!evidence.covers(x)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "evidence does not label point '" + instance.point_name(x) + "'");
    }
  }
  const VersionSpace& known = evidence.version_space();
  std::vector<std::pair<HypothesisId, Trace>> out;
  for (HypothesisId h : known.ids()) {
    out.emplace_back(h, pruned_trace(baseline, instance, agent, known, h));
  }
  return out;
}

PartialSIRProtocol::PartialSIRProtocol(const Instance& instance, AgentId favored,
                                       Variant variant)
    : instance_(instance), favored_(favored), variant_(variant) {
  check_agent(instance, favored);
  participants_ = all_agents(instance.agent_count());
  others_ = all_agents_except(instance.agent_count(), favored);
  outside_points_ = instance.points_outside(favored);
}

std::shared_ptr<const PartialSIRProtocol> PartialSIRProtocol::with_posterior_opt(
    const Instance& instance, AgentId favored, OwnerRule rule, std::size_t cap) {
  std::shared_ptr<PartialSIRProtocol> p(
      new PartialSIRProtocol(instance, favored, Variant::kPosteriorOpt));
  if (!p->others_.empty()) {
    OptResult first = opt_tree(instance, instance.prior(), p->others_, rule, cap);
    p->phase1_ = as_protocol(
        std::make_shared<TreePolicy>(std::move(first.tree), "opt"), instance,
        p->others_);
  }
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    Labeling key = instance.labeling_of(h, p->outside_points_);
    if (p->phase2_trees_.contains(key)) continue;
    const PosteriorPrior post = posterior_on(instance, p->outside_class(h));
    OptResult second = opt_tree(instance, post.weights, {favored}, rule, cap);
    p->phase2_trees_.emplace(
        std::move(key),
        std::make_shared<TreePolicy>(std::move(second.tree), "opt-posterior"));
  }
  return p;
}

std::shared_ptr<const PartialSIRProtocol>
PartialSIRProtocol::with_pruned_baseline(PolicyPtr baseline,
                                         const Instance& instance,
                                         AgentId favored) {
  std::shared_ptr<PartialSIRProtocol> p(
      new PartialSIRProtocol(instance, favored, Variant::kPrunedBaseline));
  if (!p->others_.empty()) p->phase1_ = b2ir(baseline, instance, p->others_);
  p->baseline_ = std::move(baseline);
  return p;
}

std::string PartialSIRProtocol::id() const {
  const std::string agent = std::to_string(favored_ + 1);
  if (variant_ == Variant::kPosteriorOpt) return "psir-opt:" + agent;
  return "psir-pruned:" + baseline_->id() + ":" + agent;
}

VersionSpace PartialSIRProtocol::outside_class(HypothesisId target) const {
  return agreeing_rows(instance_, outside_points_, target);
}

Trace PartialSIRProtocol::run(HypothesisId target) const {
  Trace trace;
  trace.per_agent.assign(instance_.agent_count(), 0);
  if (phase1_) append(trace, phase1_->run(target));
  const VersionSpace known = outside_class(target);
  if (variant_ == Variant::kPosteriorOpt) {
    const auto& tree =
        phase2_trees_.at(instance_.labeling_of(target, outside_points_));
    const PosteriorPrior post = posterior_on(instance_, known);
    append(trace, run_policy(*tree, instance_, post.weights, {favored_}, known,
                             target));
  } else {
    append(trace, pruned_trace(*baseline_, instance_, favored_, known, target));
  }
  trace.labeling = instance_.labeling_of(target, instance_.points_of(participants_));
  return trace;
}

std::shared_ptr<const PartialSIRProtocol> partial_sir_opt(
    const Instance& instance, AgentId favored, OwnerRule rule, std::size_t cap) {
  return PartialSIRProtocol::with_posterior_opt(instance, favored, rule, cap);
}

std::shared_ptr<const PartialSIRProtocol> partial_sir_pruned(
    PolicyPtr baseline, const Instance& instance, AgentId favored) {
  return PartialSIRProtocol::with_pruned_baseline(std::move(baseline), instance,
                                                  favored);
}

Mixture sir_mixture(ProtocolPtr ir, const std::vector<ProtocolPtr>& partials,
                    const Rational& epsilon) {
  if (!ir || partials.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "mixture needs an IR protocol and partials");
  }
  const Rational m = ir->instance().pool_size();
  if (epsilon <= 0 || epsilon >= m) {
    throw Error(ErrorCode::kInvalidEpsilon,
                "epsilon " + to_string(epsilon) + " outside (0, " + to_string(m) + ")");
  }
  const Rational k = partials.size();
  std::vector<MixtureComponent> parts{{1 - epsilon / m, std::move(ir)}};
  for (const auto& p : partials) parts.push_back({epsilon / (k * m), p});
  return Mixture(std::move(parts));
}

Mixture sir_from_baseline(PolicyPtr baseline, const Instance& instance,
                          const Rational& epsilon) {
  std::vector<ProtocolPtr> partials;
  for (AgentId a = 0; a < instance.agent_count(); ++a) {
    partials.push_back(partial_sir_pruned(baseline, instance, a));
  }
  return sir_mixture(b2ir(baseline, instance), partials, epsilon);
}

Mixture sir_from_opt(const Instance& instance, const Rational& epsilon,
                     OwnerRule rule, std::size_t cap) {
  std::vector<ProtocolPtr> partials;
  for (AgentId a = 0; a < instance.agent_count(); ++a) {
    partials.push_back(partial_sir_opt(instance, a, rule, cap));
  }
  return sir_mixture(as_protocol(opt_policy(rule, cap), instance,
                                 all_agents(instance.agent_count())),
                     partials, epsilon);
}

AssumptionReport check_assumption1(const Instance& instance, AgentId agent,
                                   std::size_t cap) {
  check_agent(instance, agent);
  const Weights& prior = instance.prior();
  const Rational alone = opt_cost(instance, prior, {agent}, cap);
  const auto outside = instance.points_outside(agent);
  Rational informed = 0;
  std::set<Labeling> seen;
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    if (!seen.insert(instance.labeling_of(h, outside)).second) continue;
    const VersionSpace cls = agreeing_rows(instance, outside, h);
    const PosteriorPrior post = posterior_on(instance, cls);
    informed += prior.mass(cls) * opt_cost(instance, post.weights, {agent}, cap);
  }
  AssumptionReport report{agent, false, alone - informed, std::nullopt};
  report.holds = *report.gap > 0;
  return report;
}

AssumptionReport check_assumption2(const Instance& instance, AgentId agent) {
  check_agent(instance, agent);
  const auto& own = instance.agent_points(agent);
  const std::size_t unconditioned = labelings_of(instance, own, Evidence(instance)).size();
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    const Evidence ev = Evidence::outside_agent(instance, agent, h);
    if (labelings_of(instance, own, ev).size() < unconditioned) {
      return AssumptionReport{agent, true, std::nullopt, h};
    }
  }
  return AssumptionReport{agent, false, std::nullopt, std::nullopt};
}

}  // namespace collab
