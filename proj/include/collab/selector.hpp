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

#ifndef COLLAB_SELECTOR_HPP_
#define COLLAB_SELECTOR_HPP_

// Text selectors naming a policy or a collaboration protocol:
//   gbs | opt | bisect | random:SEED
//   b2ir:BASE | sir:BASE:EPS | sir-opt:EPS | psir-opt:I | psir-pruned:BASE:I
// BASE is one of the first four; agents are 1-based.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "collab/evaluation.hpp"
#include "collab/model.hpp"
#include "collab/opt.hpp"
#include "collab/policy.hpp"
#include "collab/protocol.hpp"

namespace collab {

struct Selector {
  enum class Kind { kGbs, kOpt, kBisect, kRandom, kB2IR, kSir, kSirOpt,
                    kPartialOpt, kPartialPruned };

  Kind kind = Kind::kGbs;
  std::uint64_t seed = 0;               // kRandom
  std::shared_ptr<const Selector> base; // kB2IR, kSir, kPartialPruned
  Rational epsilon;                     // kSir, kSirOpt
  AgentId agent = 0;                    // kPartialOpt, kPartialPruned (0-based)

  bool is_plain_policy() const;
  // Plain policies whose runs never depend on a seed.
  bool is_deterministic() const;
};

// Throws kParseError on malformed text and kInvalidEpsilon on eps <= 0.
Selector parse_selector(std::string_view text);
// Only gbs, opt, bisect and random:SEED.
Selector parse_policy_selector(std::string_view text);

struct PolicyOptions {
  OwnerRule rule = OwnerRule::kSmallestIndex;
  std::size_t cap = kDefaultOptCap;
};

PolicyPtr make_policy(const Selector& sel, const PolicyOptions& opts = {});

using Collaboration = std::variant<ProtocolPtr, Mixture>;

// `participants` applies to plain policies and b2ir; the SIR constructions
// always involve every agent.
Collaboration make_collaboration(const Selector& sel, const Instance& instance,
                                 const AgentSet& participants,
                                 const PolicyOptions& opts = {});

ComplexityReport evaluate(const Collaboration& c);

}  // namespace collab

#endif  // COLLAB_SELECTOR_HPP_
