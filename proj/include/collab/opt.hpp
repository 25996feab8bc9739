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

#ifndef COLLAB_OPT_HPP_
#define COLLAB_OPT_HPP_

// Exact minimum expected query cost by exhaustive search over version spaces.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "collab/model.hpp"
#include "collab/policy.hpp"
#include "collab/query_tree.hpp"

namespace collab {

inline constexpr std::size_t kDefaultOptCap = 16;

// Memoized recursion on version spaces. Works in scaled integer units:
//   C(vs) = 0                                  if vs is resolved
//   C(vs) = W(vs) + min_x [C(vs_0) + C(vs_1)]  otherwise
// so the expected cost from vs is C(vs) / W(vs). Only points that split vs are
// candidates; ties go to the smallest point index.
class OptSolver {
 public:
  struct Entry {
    BigInt scaled_cost;
    std::optional<PointId> best;
  };

  OptSolver(const Instance& instance, Weights weights, AgentSet participants,
            std::size_t cap);

  // Throws kCapExceeded when `vs` holds more than `cap` hypotheses.
  const Entry& solve(const VersionSpace& vs);

  // Expected cost from `vs` under the weights renormalized onto `vs`.
  Rational cost(const VersionSpace& vs);

  const Instance& instance() const { return instance_; }
  const Weights& weights() const { return weights_; }
  const AgentSet& participants() const { return participants_; }

 private:
  const Entry& solve_bits(const Bits& vs);

  Instance instance_;
  Weights weights_;
  AgentSet participants_;
  std::vector<PointId> points_;
  std::size_t cap_;
  std::unordered_map<Bits, Entry, BitsHash> memo_;
};

struct OptResult {
  QueryTree tree;
  Rational cost;  // Q*, exact
};

// Optimal tree from the support of `weights`. Agent assignment follows
// `rule` and does not change the cost.
OptResult opt_tree(const Instance& instance, const Weights& weights,
                   const AgentSet& participants,
                   OwnerRule rule = OwnerRule::kSmallestIndex,
                   std::size_t cap = kDefaultOptCap);

// Q*(weights, participants) without building the tree.
Rational opt_cost(const Instance& instance, const Weights& weights,
                  const AgentSet& participants,
                  std::size_t cap = kDefaultOptCap);

// Enumerates every query tree without memoization or candidate pruning.
// Test oracle for opt_tree; limited to 5 supported hypotheses and 5 distinct
// participant columns over them.
Rational brute_force_opt(const Instance& instance, const Weights& weights,
                         const AgentSet& participants);

// Optimal policy usable on any instance, participant set and weights. Solved
// subproblems are cached per (instance, participants, weights).
class OptPolicy final : public Policy {
 public:
  explicit OptPolicy(OwnerRule rule = OwnerRule::kSmallestIndex,
                     std::size_t cap = kDefaultOptCap)
      : rule_(rule), cap_(cap) {}
  std::string id() const override;
  std::optional<Query> next(const QueryState& state) const override;

 private:
  using Key = std::tuple<std::uint64_t, AgentSet, std::vector<Rational>>;

  OwnerRule rule_;
  std::size_t cap_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::unique_ptr<OptSolver>> solvers_;
};

PolicyPtr opt_policy(OwnerRule rule = OwnerRule::kSmallestIndex,
                     std::size_t cap = kDefaultOptCap);

}  // namespace collab

#endif  // COLLAB_OPT_HPP_
