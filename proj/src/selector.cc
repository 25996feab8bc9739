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

#include "collab/selector.hpp"

#include <charconv>

#include "collab/error.hpp"
#include "collab/transforms.hpp"

namespace collab {
namespace {

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::kParseError,
              "selector '" + std::string(text) + "': " + why);
}

std::uint64_t parse_u64(std::string_view text, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    bad(whole, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

AgentId parse_agent(std::string_view text, std::string_view whole) {
  const std::uint64_t v = parse_u64(text, whole);
  if (v == 0) bad(whole, "agents are numbered from 1");
  return static_cast<AgentId>(v - 1);
}

Rational parse_epsilon(std::string_view text, std::string_view whole) {
  Rational eps;
  try {
    eps = parse_rational(text);
  } catch (const Error&) {
    bad(whole, "epsilon '" + std::string(text) + "' is not a rational");
  }
  if (eps <= 0) {
    throw Error(ErrorCode::kInvalidEpsilon,
                "epsilon must be positive, got " + to_string(eps));
  }
  return eps;
}

// Splits "head:tail" at the last colon.
std::pair<std::string_view, std::string_view> split_last(std::string_view s,
                                                         std::string_view whole) {
  const auto pos = s.rfind(':');
  if (pos == std::string_view::npos) bad(whole, "missing ':' argument");
  return {s.substr(0, pos), s.substr(pos + 1)};
}

bool starts_with(std::string_view s, std::string_view prefix, std::string_view& rest) {
  if (!s.starts_with(prefix)) return false;
  rest = s.substr(prefix.size());
  return true;
}

}  // namespace

bool Selector::is_plain_policy() const {
  return kind == Kind::kGbs || kind == Kind::kOpt || kind == Kind::kBisect ||
         kind == Kind::kRandom;
}

bool Selector::is_deterministic() const {
  return kind == Kind::kGbs || kind == Kind::kOpt || kind == Kind::kBisect;
}

Selector parse_policy_selector(std::string_view text) {
  Selector sel;
  std::string_view rest;
  if (text == "gbs") {
    sel.kind = Selector::Kind::kGbs;
  } else if (text == "opt") {
    sel.kind = Selector::Kind::kOpt;
  } else if (text == "bisect") {
    sel.kind = Selector::Kind::kBisect;
  } else if (starts_with(text, "random:", rest)) {
    sel.kind = Selector::Kind::kRandom;
    sel.seed = parse_u64(rest, text);
  } else {
    bad(text, "expected gbs, opt, bisect or random:SEED");
  }
  return sel;
}

Selector parse_selector(std::string_view text) {
  Selector sel;
  std::string_view rest;
  if (starts_with(text, "b2ir:", rest)) {
    sel.kind = Selector::Kind::kB2IR;
    sel.base = std::make_shared<Selector>(parse_policy_selector(rest));
  } else if (starts_with(text, "sir-opt:", rest)) {
    sel.kind = Selector::Kind::kSirOpt;
    sel.epsilon = parse_epsilon(rest, text);
  } else if (starts_with(text, "sir:", rest)) {
    sel.kind = Selector::Kind::kSir;
    auto [base, eps] = split_last(rest, text);
    sel.base = std::make_shared<Selector>(parse_policy_selector(base));
    sel.epsilon = parse_epsilon(eps, text);
  } else if (starts_with(text, "psir-opt:", rest)) {
    sel.kind = Selector::Kind::kPartialOpt;
    sel.agent = parse_agent(rest, text);
  } else if (starts_with(text, "psir-pruned:", rest)) {
    sel.kind = Selector::Kind::kPartialPruned;
    auto [base, agent] = split_last(rest, text);
    sel.base = std::make_shared<Selector>(parse_policy_selector(base));
    sel.agent = parse_agent(agent, text);
  } else {
    return parse_policy_selector(text);
  }
  return sel;
}

PolicyPtr make_policy(const Selector& sel, const PolicyOptions& opts) {
  switch (sel.kind) {
    case Selector::Kind::kGbs: return gbs_policy(opts.rule);
    case Selector::Kind::kOpt: return opt_policy(opts.rule, opts.cap);
    case Selector::Kind::kBisect: return bisect_policy(opts.rule);
    case Selector::Kind::kRandom: return random_policy(sel.seed, opts.rule);
    default:
      throw Error(ErrorCode::kInvalidArgument, "selector is not a plain policy");
  }
}

Collaboration make_collaboration(const Selector& sel, const Instance& instance,
                                 const AgentSet& participants,
                                 const PolicyOptions& opts) {
  auto check_agent = [&](AgentId a) {
    if (a >= instance.agent_count()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(a + 1) + " does not exist");
    }
  };
  switch (sel.kind) {
    case Selector::Kind::kB2IR:
      return b2ir(make_policy(*sel.base, opts), instance, participants);
    case Selector::Kind::kSir:
      return sir_from_baseline(make_policy(*sel.base, opts), instance, sel.epsilon);
    case Selector::Kind::kSirOpt:
      return sir_from_opt(instance, sel.epsilon, opts.rule, opts.cap);
    case Selector::Kind::kPartialOpt:
      check_agent(sel.agent);
      return partial_sir_opt(instance, sel.agent, opts.rule, opts.cap);
    case Selector::Kind::kPartialPruned:
      check_agent(sel.agent);
      return partial_sir_pruned(make_policy(*sel.base, opts), instance, sel.agent);
    default:
      return as_protocol(make_policy(sel, opts), instance, participants);
  }
}

ComplexityReport evaluate(const Collaboration& c) {
  return std::visit(
      [](const auto& v) -> ComplexityReport {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Mixture>) {
          return evaluate(v);
        } else {
          return evaluate(*v);
        }
      },
      c);
}

}  // namespace collab
