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

#include "collab/opt.hpp"

#include <algorithm>
#include <set>

#include "collab/error.hpp"

namespace collab {
namespace {

constexpr std::size_t kBruteForceLimit = 5;

// Replays a solver's choices; only ever asked about states the solver reached.
class MemoPolicy final : public Policy {
 public:
  MemoPolicy(OptSolver& solver, OwnerRule rule) : solver_(solver), rule_(rule) {}
  std::string id() const override { return "opt"; }
  std::optional<Query> next(const QueryState& state) const override {
    const auto& entry = solver_.solve(state.version_space);
    if (!entry.best) return std::nullopt;
    return Query{owner_of(state.instance, state.participants, *entry.best,
                          rule_, state.assigned),
                 *entry.best};
  }

 private:
  OptSolver& solver_;
  OwnerRule rule_;
};

Rational brute_force(const Instance& instance, const Weights& weights,
                     const std::vector<PointId>& points, const VersionSpace& vs,
                     Bits& queried) {
  if (is_resolved(instance, vs, points)) return 0;
  const Rational total = weights.mass(vs);
  std::optional<Rational> best;
  for (PointId x : points) {
    if (queried.test(x)) continue;
    queried.set(x);
    Rational cost = 1;
    const Split parts = split(instance, vs, x);
    for (bool label : {false, true}) {
      const VersionSpace& side = parts.side(label);
      if (side.empty()) continue;
      cost += weights.mass(side) / total *
              brute_force(instance, weights, points, side, queried);
    }
    queried.reset(x);
    if (!best || cost < *best) best = cost;
  }
  return *best;
}

}  // namespace

OptSolver::OptSolver(const Instance& instance, Weights weights,
                     AgentSet participants, std::size_t cap)
    : instance_(instance),
      weights_(std::move(weights)),
      participants_(std::move(participants)),
      points_(instance.points_of(participants_)),
      cap_(cap) {}

const OptSolver::Entry& OptSolver::solve(const VersionSpace& vs) {
  if (auto it = memo_.find(vs.members()); it != memo_.end()) return it->second;
  if (vs.size() > cap_) {
    throw Error(ErrorCode::kCapExceeded,
                "exhaustive search over " + std::to_string(vs.size()) +
                    " hypotheses exceeds the cap of " + std::to_string(cap_));
  }
  if (vs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty version space");
  }
  return solve_bits(vs.members());
}

Rational OptSolver::cost(const VersionSpace& vs) {
  const Entry& entry = solve(vs);
  return Rational(entry.scaled_cost, weights_.scaled_mass(vs));
}

const OptSolver::Entry& OptSolver::solve_bits(const Bits& vs) {
  if (auto it = memo_.find(vs); it != memo_.end()) return it->second;
  Entry entry{0, std::nullopt};
  std::optional<BigInt> best;
  for (PointId x : points_) {
    const Bits& positive = instance_.positives(x);
    if (!vs.intersects(positive) || vs.is_subset_of(positive)) continue;
    BigInt cost = solve_bits(vs - positive).scaled_cost;
    cost += solve_bits(vs & positive).scaled_cost;
    if (!best || cost < *best) {
      best = std::move(cost);
      entry.best = x;
    }
  }
  if (best) entry.scaled_cost = weights_.scaled_mass(VersionSpace(vs)) + *best;
  return memo_.emplace(vs, std::move(entry)).first->second;
}

OptResult opt_tree(const Instance& instance, const Weights& weights,
                   const AgentSet& participants, OwnerRule rule,
                   std::size_t cap) {
  OptSolver solver(instance, weights, participants, cap);
  const VersionSpace root = weights.support();
  Rational cost = solver.cost(root);
  MemoPolicy policy(solver, rule);
  QueryTree tree = build_tree(policy, instance, weights, participants, root);
  return OptResult{std::move(tree), std::move(cost)};
}

Rational opt_cost(const Instance& instance, const Weights& weights,
                  const AgentSet& participants, std::size_t cap) {
  OptSolver solver(instance, weights, participants, cap);
  return solver.cost(weights.support());
}

Rational brute_force_opt(const Instance& instance, const Weights& weights,
                         const AgentSet& participants) {
  const VersionSpace support = weights.support();
  const std::vector<PointId> points = instance.points_of(participants);
  // Points are counted by their distinct label columns on the support.
  std::set<Bits> columns;
  for (PointId x : points) columns.insert(instance.positives(x) & support.members());
  if (support.size() > kBruteForceLimit || columns.size() > kBruteForceLimit) {
    throw Error(ErrorCode::kCapExceeded,
                "brute force is limited to 5 hypotheses and 5 distinct points");
  }
  Bits queried(instance.pool_size());
  return brute_force(instance, weights, points, support, queried);
}

std::string OptPolicy::id() const {
  return rule_ == OwnerRule::kLeastLoaded ? "opt@least-loaded" : "opt";
}

std::optional<Query> OptPolicy::next(const QueryState& state) const {
  std::optional<PointId> best;
  {
    std::lock_guard lock(mutex_);
    Key key{state.instance.uid(), state.participants, state.weights.masses()};
    auto it = solvers_.find(key);
    if (it == solvers_.end()) {
      // Solvers hold copies of their inputs; dropping them is always safe.
      if (solvers_.size() >= 256) solvers_.clear();
      it = solvers_
               .emplace(std::move(key), std::make_unique<OptSolver>(
                                            state.instance, state.weights,
                                            state.participants, cap_))
               .first;
    }
    best = it->second->solve(state.version_space).best;
  }
  if (!best) return std::nullopt;
  return Query{owner_of(state.instance, state.participants, *best, rule_,
                        state.assigned),
               *best};
}

PolicyPtr opt_policy(OwnerRule rule, std::size_t cap) {
  return std::make_shared<OptPolicy>(rule, cap);
}

}  // namespace collab
