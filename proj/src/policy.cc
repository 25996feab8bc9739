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

#include "collab/policy.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "collab/error.hpp"

namespace collab {
namespace {

std::string rule_suffix(OwnerRule rule) {
  return rule == OwnerRule::kLeastLoaded ? "@least-loaded" : "";
}

std::vector<PointId> undetermined_points(const QueryState& state) {
  std::vector<PointId> out;
  for (PointId x : state.participant_points) {
    if (is_split(state.instance, state.version_space, x)) out.push_back(x);
  }
  return out;
}

Query assign(const QueryState& state, PointId point, OwnerRule rule) {
  return Query{owner_of(state.instance, state.participants, point, rule,
                        state.assigned),
               point};
}

}  // namespace

std::size_t Trace::queries() const {
  return std::accumulate(per_agent.begin(), per_agent.end(), std::size_t{0});
}

AgentId owner_of(const Instance& instance, const AgentSet& participants,
                 PointId point, OwnerRule rule,
                 std::span<const std::size_t> assigned) {
  std::optional<AgentId> best;
  for (AgentId a : instance.owners(point)) {
    if (!std::binary_search(participants.begin(), participants.end(), a)) {
      continue;
    }
    if (!best) {
      best = a;
      if (rule == OwnerRule::kSmallestIndex) break;
    } else if (assigned.size() > a && assigned[a] < assigned[*best]) {
      best = a;
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoOwner, "no participant owns point '" +
                                         instance.point_name(point) + "'");
  }
  return *best;
}

std::optional<PointId> gbs_choose(const Instance& instance,
                                  const Weights& weights,
                                  const AgentSet& participants,
                                  const VersionSpace& vs) {
  const BigInt total = weights.scaled_mass(vs);
  std::optional<PointId> best;
  BigInt best_value = 0;
  for (PointId x : instance.points_of(participants)) {
    const BigInt positive =
        weights.scaled_mass(VersionSpace(vs.members() & instance.positives(x)));
    const BigInt negative = total - positive;
    const BigInt& value = positive < negative ? positive : negative;
    if (value > best_value) {
      best_value = value;
      best = x;
    }
  }
  return best;
}

std::string GbsPolicy::id() const { return "gbs" + rule_suffix(rule_); }

std::optional<Query> GbsPolicy::next(const QueryState& state) const {
  auto point = gbs_choose(state.instance, state.weights, state.participants,
                          state.version_space);
  if (!point) return std::nullopt;
  return assign(state, *point, rule_);
}

std::string RandomPolicy::id() const {
  return "random:" + std::to_string(seed_) + rule_suffix(rule_);
}

std::optional<Query> RandomPolicy::next(const QueryState& state) const {
  const auto candidates = undetermined_points(state);
  if (candidates.empty()) return std::nullopt;
  std::vector<std::uint32_t> material = {
      static_cast<std::uint32_t>(seed_),
      static_cast<std::uint32_t>(seed_ >> 32)};
  for (const Step& s : state.history) {
    material.push_back(static_cast<std::uint32_t>(s.point * 2 + (s.label ? 1 : 0)));
  }
  std::seed_seq seq(material.begin(), material.end());
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  return assign(state, candidates[pick(rng)], rule_);
}

std::string BisectPolicy::id() const { return "bisect" + rule_suffix(rule_); }

std::optional<Query> BisectPolicy::next(const QueryState& state) const {
  const auto candidates = undetermined_points(state);
  if (candidates.empty()) return std::nullopt;
  const std::size_t lower = (candidates.size() - 1) / 2;
  if (candidates.size() % 2 == 1) return assign(state, candidates[lower], rule_);
  // Even count: of the two middle points, prefer the one whose owner has
  // queried less so far; ties keep the lower point.
  const Query a = assign(state, candidates[lower], rule_);
  const Query b = assign(state, candidates[lower + 1], rule_);
  return state.assigned[b.agent] < state.assigned[a.agent] ? b : a;
}

PolicyPtr gbs_policy(OwnerRule rule) { return std::make_shared<GbsPolicy>(rule); }

PolicyPtr random_policy(std::uint64_t seed, OwnerRule rule) {
  return std::make_shared<RandomPolicy>(seed, rule);
}

PolicyPtr bisect_policy(OwnerRule rule) {
  return std::make_shared<BisectPolicy>(rule);
}

Trace run_policy(const Policy& policy, const Instance& instance,
                 const Weights& weights, const AgentSet& participants,
                 const VersionSpace& start, HypothesisId target,
                 const FeedRule& feed) {
  if (target >= instance.hypothesis_count() || !start.contains(target)) {
    throw Error(ErrorCode::kInvalidArgument,
                "target " + std::to_string(target) +
                    " is not in the starting version space");
  }
  const std::vector<PointId> points = instance.points_of(participants);
  const std::size_t k = instance.agent_count();
  Trace trace;
  trace.per_agent.assign(k, 0);
  std::vector<std::size_t> assigned(k, 0);
  Bits queried(instance.pool_size());
  VersionSpace vs = start;

  auto violation = [&](const std::string& what) {
    return Error(ErrorCode::kPolicyViolation,
                 policy.id() + " " + what + " (target " +
                     std::to_string(target) + ", step " +
                     std::to_string(trace.steps.size() + 1) + ")");
  };

  for (;;) {
    const bool resolved = is_resolved(instance, vs, points);
    const QueryState state{instance, weights,  participants, points,
                           vs,       trace.steps, assigned};
    const std::optional<Query> q = policy.next(state);
    if (!q) {
      if (!resolved) throw violation("stopped before resolving its points");
      break;
    }
    if (resolved) throw violation("queried after its points were resolved");
    if (!std::binary_search(participants.begin(), participants.end(), q->agent)) {
      throw violation("assigned a query to non-participant agent " +
                      std::to_string(q->agent + 1));
    }
    if (q->point >= instance.pool_size() || !instance.owns(q->agent, q->point)) {
      throw violation("assigned a point its agent does not own");
    }
    if (queried.test(q->point)) {
      throw violation("re-queried point '" + instance.point_name(q->point) + "'");
    }
    queried.set(q->point);
    const bool label = instance.label(target, q->point);
    const bool live = !(feed && feed(*q, vs));
    vs = *restrict(instance, vs, q->point, label);
    trace.steps.push_back(Step{q->agent, q->point, label, live});
    ++assigned[q->agent];
    if (live) ++trace.per_agent[q->agent];
  }
  trace.labeling = instance.labeling_of(target, points);
  return trace;
}

Trace simulate(const Policy& policy, const Instance& instance,
               const AgentSet& participants, HypothesisId target) {
  return run_policy(policy, instance, instance.prior(), participants,
                    VersionSpace::full(instance.hypothesis_count()), target);
}

}  // namespace collab
