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

#ifndef COLLAB_POLICY_HPP_
#define COLLAB_POLICY_HPP_

// Deterministic query policies and the simulation loop that runs them against
// a fixed target hypothesis.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collab/model.hpp"

namespace collab {

struct Query {
  AgentId agent;
  PointId point;

  bool operator==(const Query&) const = default;
};

// How a collaborative policy picks the querying agent for a shared point.
enum class OwnerRule {
  kSmallestIndex,
  kLeastLoaded,  // fewest queries assigned so far on this run; ties by index
};

// `assigned` holds per-agent counts (size k); only read by kLeastLoaded.
// Throws kNoOwner when no participant owns `point`.
AgentId owner_of(const Instance& instance, const AgentSet& participants,
                 PointId point, OwnerRule rule = OwnerRule::kSmallestIndex,
                 std::span<const std::size_t> assigned = {});

struct Step {
  AgentId agent;
  PointId point;
  bool label;
  bool live = true;  // false when the label was fed at zero cost

  bool operator==(const Step&) const = default;
};

struct Trace {
  std::vector<Step> steps;
  Labeling labeling;                   // participant points, ascending
  std::vector<std::size_t> per_agent;  // live queries per agent (size k)

  std::size_t queries() const;
};

// Everything a policy may look at when choosing its next query.
struct QueryState {
  const Instance& instance;
  const Weights& weights;
  const AgentSet& participants;
  std::span<const PointId> participant_points;
  const VersionSpace& version_space;
  std::span<const Step> history;
  std::span<const std::size_t> assigned;
};

class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string id() const = 0;

  // std::nullopt means Stop.
  virtual std::optional<Query> next(const QueryState& state) const = 0;
};

using PolicyPtr = std::shared_ptr<const Policy>;

// Participant point maximizing min(mass0, mass1) over `vs`, smallest index on
// ties; std::nullopt when every candidate has a zero side.
std::optional<PointId> gbs_choose(const Instance& instance,
                                  const Weights& weights,
                                  const AgentSet& participants,
                                  const VersionSpace& vs);

// Generalized binary search.
class GbsPolicy final : public Policy {
 public:
  explicit GbsPolicy(OwnerRule rule = OwnerRule::kSmallestIndex) : rule_(rule) {}
  std::string id() const override;
  std::optional<Query> next(const QueryState& state) const override;

 private:
  OwnerRule rule_;
};

// Uniform choice among undetermined participant points. The choice is a pure
// function of (seed, history), so each seed induces one deterministic policy.
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed,
                        OwnerRule rule = OwnerRule::kSmallestIndex)
      : seed_(seed), rule_(rule) {}
  std::string id() const override;
  std::optional<Query> next(const QueryState& state) const override;

 private:
  std::uint64_t seed_;
  OwnerRule rule_;
};

// Median of the undetermined participant points in index order; with two
// middle points, the one whose owner has queried less (then the lower). On a
// pool sorted by coordinate this is binary search for a threshold.
class BisectPolicy final : public Policy {
 public:
  explicit BisectPolicy(OwnerRule rule = OwnerRule::kSmallestIndex)
      : rule_(rule) {}
  std::string id() const override;
  std::optional<Query> next(const QueryState& state) const override;

 private:
  OwnerRule rule_;
};

PolicyPtr gbs_policy(OwnerRule rule = OwnerRule::kSmallestIndex);
PolicyPtr random_policy(std::uint64_t seed,
                        OwnerRule rule = OwnerRule::kSmallestIndex);
PolicyPtr bisect_policy(OwnerRule rule = OwnerRule::kSmallestIndex);

// Decides, before a query is answered, whether its label is already known and
// can be fed at zero cost. `current` is the runner's version space.
using FeedRule = std::function<bool(const Query& query, const VersionSpace& current)>;

// Runs `policy` from version space `start` until it stops, answering with the
// labels of `target`. Throws kPolicyViolation when the policy re-queries a
// point, queries a point its agent does not own, names a non-participant,
// queries after resolution, or stops early.
Trace run_policy(const Policy& policy, const Instance& instance,
                 const Weights& weights, const AgentSet& participants,
                 const VersionSpace& start, HypothesisId target,
                 const FeedRule& feed = nullptr);

// run_policy from the full version space under the instance prior.
Trace simulate(const Policy& policy, const Instance& instance,
               const AgentSet& participants, HypothesisId target);

}  // namespace collab

#endif  // COLLAB_POLICY_HPP_
