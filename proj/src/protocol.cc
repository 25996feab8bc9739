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

#include "collab/protocol.hpp"

#include "collab/error.hpp"

namespace collab {

PolicyProtocol::PolicyProtocol(PolicyPtr policy, const Instance& instance,
                               AgentSet participants)
    : policy_(std::move(policy)),
      instance_(instance),
      participants_(std::move(participants)) {
  if (participants_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no participating agents");
  }
  for (AgentId a : participants_) {
    if (a >= instance_.agent_count()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(a + 1) + " does not exist");
    }
  }
}

Trace PolicyProtocol::run(HypothesisId target) const {
  return simulate(*policy_, instance_, participants_, target);
}

ProtocolPtr as_protocol(PolicyPtr policy, const Instance& instance,
                        AgentSet participants) {
  return std::make_shared<PolicyProtocol>(std::move(policy), instance,
                                          std::move(participants));
}

void check_mixture_weights(const std::vector<Rational>& weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::kWeightsNotNormalized, "mixture has no components");
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (w <= 0) {
      throw Error(ErrorCode::kWeightsNotNormalized,
                  "non-positive weight " + to_string(w));
    }
    total += w;
  }
  if (total != 1) {
    throw Error(ErrorCode::kWeightsNotNormalized,
                "weights sum to " + to_string(total));
  }
}

Mixture::Mixture(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  std::vector<Rational> weights;
  for (const auto& c : components_) weights.push_back(c.weight);
  check_mixture_weights(weights);
}

std::string Mixture::id() const {
  std::string out = "mixture(";
  for (std::size_t j = 0; j < components_.size(); ++j) {
    if (j) out += ", ";
    out += to_string(components_[j].weight) + " " +
           components_[j].protocol->id();
  }
  return out + ")";
}

}  // namespace collab
