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

#include "collab/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "collab/error.hpp"

namespace collab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

// Accumulates prior-weighted per-hypothesis costs in scaled integer units.
class ReportBuilder {
 public:
  ReportBuilder(const Instance& instance, std::string policy,
                AgentSet participants)
      : instance_(instance),
        total_(0),
        per_agent_(instance.agent_count(), BigInt(0)) {
    report_.policy = std::move(policy);
    report_.participants = std::move(participants);
    report_.per_hypothesis.resize(instance.hypothesis_count());
  }

  void add(HypothesisId h, const std::vector<std::size_t>& counts) {
    const BigInt& mass = instance_.prior().scaled(h);
    HypothesisCost& cost = report_.per_hypothesis[h];
    cost.per_agent.assign(counts.size(), Rational(0));
    std::size_t length = 0;
    for (AgentId a = 0; a < counts.size(); ++a) {
      cost.per_agent[a] = counts[a];
      per_agent_[a] += mass * counts[a];
      length += counts[a];
    }
    cost.queries = length;
    total_ += mass * length;
  }

  ComplexityReport finish() {
    const BigInt& d = instance_.prior().denominator();
    report_.total = Rational(total_, d);
    for (const auto& a : per_agent_) report_.per_agent.emplace_back(a, d);
    return std::move(report_);
  }

 private:
  const Instance& instance_;
  ComplexityReport report_;
  BigInt total_;
  std::vector<BigInt> per_agent_;
};

}  // namespace

ComplexityReport label_complexity(const Policy& policy, const Instance& instance,
                                  const AgentSet& participants) {
  ReportBuilder builder(instance, policy.id(), participants);
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    builder.add(h, simulate(policy, instance, participants, h).per_agent);
  }
  return builder.finish();
}

ComplexityReport evaluate(const Protocol& protocol) {
  const Instance& instance = protocol.instance();
  ReportBuilder builder(instance, protocol.id(), protocol.participants());
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    builder.add(h, protocol.run(h).per_agent);
  }
  return builder.finish();
}

ComplexityReport evaluate(const Mixture& mixture) {
  std::vector<std::pair<Rational, ComplexityReport>> parts;
  for (const auto& c : mixture.components()) {
    parts.emplace_back(c.weight, evaluate(*c.protocol));
  }
  ComplexityReport report = mixture_report(parts);
  report.policy = mixture.id();
  return report;
}

ComplexityReport tree_complexity(const QueryTree& tree, const Instance& instance,
                                 const std::string& policy_id) {
  const std::size_t k = instance.agent_count();
  const Weights& prior = instance.prior();
  std::vector<BigInt> per_agent(k, BigInt(0));
  for (const TreeNode& node : tree.nodes()) {
    if (node.is_leaf()) continue;
    per_agent[node.query->agent] += prior.scaled_mass(node.version_space);
  }
  ComplexityReport report;
  report.policy = policy_id;
  report.participants = tree.participants();
  report.total = 0;
  for (const auto& a : per_agent) {
    report.per_agent.emplace_back(a, prior.denominator());
    report.total += report.per_agent.back();
  }
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    HypothesisCost cost{0, std::vector<Rational>(k, Rational(0))};
    for (const Query& q : tree.path(instance, h)) {
      cost.per_agent[q.agent] += 1;
      cost.queries += 1;
    }
    report.per_hypothesis.push_back(std::move(cost));
  }
  return report;
}

ComplexityReport mixture_report(
    std::span<const std::pair<Rational, ComplexityReport>> components) {
  std::vector<Rational> weights;
  for (const auto& [w, r] : components) weights.push_back(w);
  check_mixture_weights(weights);

  const ComplexityReport& first = components.front().second;
  ComplexityReport out;
  out.policy = "mixture";
  out.participants = first.participants;
  out.total = 0;
  out.per_agent.assign(first.per_agent.size(), Rational(0));
  out.per_hypothesis.assign(
      first.per_hypothesis.size(),
      HypothesisCost{0, std::vector<Rational>(first.per_agent.size(), Rational(0))});
  for (const auto& [w, r] : components) {
    if (r.per_agent.size() != out.per_agent.size() ||
        r.per_hypothesis.size() != out.per_hypothesis.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "mixture components describe different instances");
    }
    out.total += w * r.total;
    for (std::size_t a = 0; a < out.per_agent.size(); ++a) {
      out.per_agent[a] += w * r.per_agent[a];
    }
    for (std::size_t h = 0; h < out.per_hypothesis.size(); ++h) {
      out.per_hypothesis[h].queries += w * r.per_hypothesis[h].queries;
      for (std::size_t a = 0; a < out.per_agent.size(); ++a) {
        out.per_hypothesis[h].per_agent[a] += w * r.per_hypothesis[h].per_agent[a];
      }
    }
    for (AgentId a : r.participants) {
      if (!std::binary_search(out.participants.begin(), out.participants.end(), a)) {
        out.participants.insert(
            std::upper_bound(out.participants.begin(), out.participants.end(), a), a);
      }
    }
  }
  return out;
}

std::string_view to_string(IRStatus status) {
  switch (status) {
    case IRStatus::kStrict: return "strict";
    case IRStatus::kWeak: return "weak";
    case IRStatus::kViolated: return "violated";
  }
  return "unknown";
}

IRStatus classify(const Rational& collaborative, const Rational& individual) {
  if (collaborative < individual) return IRStatus::kStrict;
  if (collaborative == individual) return IRStatus::kWeak;
  return IRStatus::kViolated;
}

bool IRVerdict::individually_rational() const {
  return std::none_of(agents.begin(), agents.end(), [](const AgentVerdict& v) {
    return v.status == IRStatus::kViolated;
  });
}

bool IRVerdict::strictly_individually_rational() const {
  return std::all_of(agents.begin(), agents.end(), [](const AgentVerdict& v) {
    return v.status == IRStatus::kStrict;
  });
}

std::vector<Rational> individual_costs(const Policy& baseline,
                                       const Instance& instance) {
  std::vector<Rational> out;
  for (AgentId a = 0; a < instance.agent_count(); ++a) {
    out.push_back(label_complexity(baseline, instance, {a}).total);
  }
  return out;
}

IRVerdict verify_ir(const Instance& instance,
                    const ComplexityReport& collaborative,
                    const Policy& baseline) {
  IRVerdict verdict;
  verdict.collaborative = collaborative.policy;
  verdict.baseline = baseline.id();
  const auto individual = individual_costs(baseline, instance);
  for (AgentId a = 0; a < instance.agent_count(); ++a) {
    verdict.agents.push_back(AgentVerdict{
        a, collaborative.per_agent[a], individual[a],
        classify(collaborative.per_agent[a], individual[a])});
  }
  return verdict;
}

IRVerdict verify_ir(const Instance& instance, const Protocol& collaborative,
                    const Policy& baseline) {
  return verify_ir(instance, evaluate(collaborative), baseline);
}

IRVerdict verify_ir(const Instance& instance, const Mixture& collaborative,
                    const Policy& baseline) {
  return verify_ir(instance, evaluate(collaborative), baseline);
}

Enclosure log_enclosure(const Rational& x) {
  if (x <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "logarithm of a non-positive value");
  }
  if (x == 1) return Enclosure{0.0, 0.0};
  // glibc's log is accurate to within one ulp; two steps outward cover it.
  Enclosure e{down(down(std::log(lower_double(x)))),
              up(up(std::log(upper_double(x))))};
  if (x > 1) e.lo = std::max(e.lo, 0.0);
  if (x < 1) e.hi = std::min(e.hi, 0.0);
  return e;
}

std::string_view to_string(BoundStatus status) {
  switch (status) {
    case BoundStatus::kHolds: return "holds";
    case BoundStatus::kFails: return "fails";
    case BoundStatus::kUndecided: return "undecided";
  }
  return "unknown";
}

BoundStatus BoundMargin::status() const {
  if (upper_double(lhs) <= rhs.lo) return BoundStatus::kHolds;
  if (lower_double(lhs) > rhs.hi) return BoundStatus::kFails;
  return BoundStatus::kUndecided;
}

BoundMargin gbs_bound_margin(const Instance& instance,
                             const AgentSet& participants, std::size_t cap) {
  BoundMargin margin;
  margin.optimal = opt_cost(instance, instance.prior(), participants, cap);
  margin.lhs = label_complexity(GbsPolicy(), instance, participants).total;
  const auto& masses = instance.prior().masses();
  margin.min_mass = *std::min_element(masses.begin(), masses.end());
  const Enclosure log = log_enclosure(Rational(1) / margin.min_mass);
  const Rational factor = 4 * margin.optimal;
  // Both factors are non-negative, so the product bounds use matching ends.
  margin.rhs.lo = factor == 0 ? 0.0 : down(lower_double(factor) * log.lo);
  margin.rhs.hi = factor == 0 ? 0.0 : up(upper_double(factor) * log.hi);
  margin.rhs.lo = std::max(margin.rhs.lo, 0.0);
  return margin;
}

}  // namespace collab
