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

#ifndef COLLAB_EVALUATION_HPP_
#define COLLAB_EVALUATION_HPP_

// Exact expected label complexity, per-agent decomposition and the
// individual-rationality verdicts built on it.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collab/model.hpp"
#include "collab/opt.hpp"
#include "collab/policy.hpp"
#include "collab/protocol.hpp"
#include "collab/query_tree.hpp"

namespace collab {

struct HypothesisCost {
  Rational queries;
  std::vector<Rational> per_agent;
};

// total = sum of per_agent = sum over h of prior(h) * per_hypothesis[h].queries
struct ComplexityReport {
  std::string policy;
  AgentSet participants;
  Rational total;
  std::vector<Rational> per_agent;  // size k; zero for non-participants
  std::vector<HypothesisCost> per_hypothesis;
};

// Simulates `policy` against every hypothesis row.
ComplexityReport label_complexity(const Policy& policy, const Instance& instance,
                                  const AgentSet& participants);

ComplexityReport evaluate(const Protocol& protocol);

// Convex combination of the components' reports.
ComplexityReport evaluate(const Mixture& mixture);

// Same quantities from an explicit tree: each internal node contributes the
// prior mass of its version space to its querying agent.
ComplexityReport tree_complexity(const QueryTree& tree, const Instance& instance,
                                 const std::string& policy_id = "tree");

// Field-wise convex combination. Throws kWeightsNotNormalized.
ComplexityReport mixture_report(
    std::span<const std::pair<Rational, ComplexityReport>> components);

enum class IRStatus { kStrict, kWeak, kViolated };

std::string_view to_string(IRStatus status);
IRStatus classify(const Rational& collaborative, const Rational& individual);

struct AgentVerdict {
  AgentId agent;
  Rational collaborative;  // Q_i(A', pi, {X_1..X_k})
  Rational individual;     // Q(A, pi, {X_i})
  IRStatus status;
};

struct IRVerdict {
  std::string collaborative;
  std::string baseline;
  std::vector<AgentVerdict> agents;

  bool individually_rational() const;
  bool strictly_individually_rational() const;
};

// Q(A, pi, {X_i}) for every agent i.
std::vector<Rational> individual_costs(const Policy& baseline,
                                       const Instance& instance);

IRVerdict verify_ir(const Instance& instance,
                    const ComplexityReport& collaborative,
                    const Policy& baseline);
IRVerdict verify_ir(const Instance& instance, const Protocol& collaborative,
                    const Policy& baseline);
IRVerdict verify_ir(const Instance& instance, const Mixture& collaborative,
                    const Policy& baseline);

// Closed interval of doubles certified to contain a real quantity.
struct Enclosure {
  double lo;
  double hi;
};

// Outward-rounded enclosure of ln(x) for x > 0.
Enclosure log_enclosure(const Rational& x);

enum class BoundStatus { kHolds, kFails, kUndecided };
std::string_view to_string(BoundStatus status);

// lhs = Q(GBS), rhs = 4 * Q* * ln(1 / min_h pi(h)).
struct BoundMargin {
  Rational lhs;
  Rational optimal;
  Rational min_mass;
  Enclosure rhs;

  // kHolds only when lhs <= rhs.lo, kFails only when lhs > rhs.hi.
  BoundStatus status() const;
};

BoundMargin gbs_bound_margin(const Instance& instance,
                             const AgentSet& participants,
                             std::size_t cap = kDefaultOptCap);

}  // namespace collab

#endif  // COLLAB_EVALUATION_HPP_
