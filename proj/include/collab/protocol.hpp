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

#ifndef COLLAB_PROTOCOL_HPP_
#define COLLAB_PROTOCOL_HPP_

// Collaborative algorithms bound to an instance and an agent collection, and
// finite mixtures of them.

#include <memory>
#include <string>
#include <vector>

#include "collab/model.hpp"
#include "collab/policy.hpp"

namespace collab {

// A deterministic collaboration protocol. `run` reports which queries were
// performed live and which were answered from already-recovered labels.
// The instance must outlive the protocol.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual std::string id() const = 0;
  virtual const Instance& instance() const = 0;
  virtual const AgentSet& participants() const = 0;
  virtual Trace run(HypothesisId target) const = 0;
};

using ProtocolPtr = std::shared_ptr<const Protocol>;

// A policy run as-is over an agent collection.
class PolicyProtocol final : public Protocol {
 public:
  PolicyProtocol(PolicyPtr policy, const Instance& instance,
                 AgentSet participants);

  std::string id() const override { return policy_->id(); }
  const Instance& instance() const override { return instance_; }
  const AgentSet& participants() const override { return participants_; }
  Trace run(HypothesisId target) const override;

  const PolicyPtr& policy() const { return policy_; }

 private:
  PolicyPtr policy_;
  const Instance& instance_;
  AgentSet participants_;
};

ProtocolPtr as_protocol(PolicyPtr policy, const Instance& instance,
                        AgentSet participants);

struct MixtureComponent {
  Rational weight;
  ProtocolPtr protocol;
};

// Runs component j with probability weight_j. Weights are positive and sum to
// exactly 1 (kWeightsNotNormalized otherwise).
class Mixture {
 public:
  explicit Mixture(std::vector<MixtureComponent> components);

  const std::vector<MixtureComponent>& components() const { return components_; }
  std::string id() const;

 private:
  std::vector<MixtureComponent> components_;
};

// Throws kWeightsNotNormalized unless every weight is positive and they sum
// to 1.
void check_mixture_weights(const std::vector<Rational>& weights);

}  // namespace collab

#endif  // COLLAB_PROTOCOL_HPP_
