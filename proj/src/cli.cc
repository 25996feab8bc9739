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

#include "collab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "collab/error.hpp"
#include "collab/evaluation.hpp"
#include "collab/instances.hpp"
#include "collab/opt.hpp"
#include "collab/query_tree.hpp"
#include "collab/report_format.hpp"
#include "collab/selector.hpp"
#include "collab/transforms.hpp"
#include "json.hpp"

namespace collab {
namespace {

using Json = nlohmann::ordered_json;

// Raised for bad flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::string policy = "gbs";
  std::string collab;
  std::string baseline = "gbs";
  std::string participants;
  std::string tie_break = "smallest";
  std::string format = "table";
  std::string epsilon;
  int from = 2;
  int to = 12;
  // make-instance
  std::string kind = "fig1";
  int n = 3;
  std::uint64_t seed = 0;
  std::size_t pool = 6;
  std::size_t class_size = 8;
  std::size_t agents = 2;
  double share_prob = 0.0;
  std::string prior = "uniform";
  std::string grid;
  std::vector<std::string> agent_values;
  std::string output;
};

std::size_t opt_cap() {
  const char* env = std::getenv("COLLABAL_OPT_CAP");
  if (env == nullptr || *env == '\0') return kDefaultOptCap;
  std::size_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) {
    throw UsageError("COLLABAL_OPT_CAP must be a positive integer");
  }
  return v;
}

PolicyOptions policy_options(const Options& o) {
  PolicyOptions p;
  p.rule = o.tie_break == "least-loaded" ? OwnerRule::kLeastLoaded
                                         : OwnerRule::kSmallestIndex;
  p.cap = opt_cap();
  return p;
}

AgentSet parse_participants(const std::string& text, const Instance& instance) {
  if (text.empty()) return all_agents(instance.agent_count());
  AgentSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() ||
        v == 0 || v > instance.agent_count()) {
      throw UsageError("bad participant '" + item + "' (agents are 1.." +
                       std::to_string(instance.agent_count()) + ")");
    }
    out.push_back(v - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

void require_format(const Options& o, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), o.format) == allowed.end()) {
    throw UsageError("format '" + o.format + "' is not supported by this command");
  }
}

Instance load(const Options& o) { return load_instance(std::filesystem::path(o.instance)); }

int cmd_eval(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const Instance inst = load(o);
  const Selector sel = parse_selector(o.policy);
  const AgentSet parts = parse_participants(o.participants, inst);
  const ComplexityReport report =
      evaluate(make_collaboration(sel, inst, parts, policy_options(o)));
  out << (o.format == "json" ? report_json(report) : report_table(report));
  return kExitOk;
}

int cmd_check_ir(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  if (o.collab.empty()) throw UsageError("--collab is required");
  const Instance inst = load(o);
  const Selector collab = parse_selector(o.collab);
  const Selector base = parse_policy_selector(o.baseline);
  const PolicyOptions opts = policy_options(o);
  const AgentSet parts = parse_participants(o.participants, inst);
  const ComplexityReport report =
      evaluate(make_collaboration(collab, inst, parts, opts));
  const IRVerdict verdict = verify_ir(inst, report, *make_policy(base, opts));
  out << (o.format == "json" ? verdict_json(verdict) : verdict_table(verdict));
  return verdict.individually_rational() ? kExitOk : kExitVerdictFail;
}

int cmd_check_sir(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  if (o.epsilon.empty()) throw UsageError("--epsilon is required");
  const Instance inst = load(o);
  const Selector base = parse_policy_selector(o.baseline);
  Rational eps;
  try {
    eps = parse_rational(o.epsilon);
  } catch (const Error&) {
    throw UsageError("epsilon '" + o.epsilon + "' is not a rational");
  }
  const PolicyOptions opts = policy_options(o);
  const PolicyPtr baseline = make_policy(base, opts);
  const Mixture mixture = sir_from_baseline(baseline, inst, eps);

  std::vector<AssumptionReport> assumption;
  for (AgentId a = 0; a < inst.agent_count(); ++a) {
    assumption.push_back(check_assumption2(inst, a));
  }
  const ComplexityReport mixed = evaluate(mixture);
  const IRVerdict verdict = verify_ir(inst, mixed, *baseline);
  const Rational ir_total = evaluate(*b2ir(baseline, inst)).total;
  const bool total_ok = mixed.total <= ir_total + eps;
  const bool strict = verdict.strictly_individually_rational();

  if (o.format == "json") {
    Json doc;
    Json rows = Json::array();
    for (const auto& r : assumption) {
      Json row;
      row["agent"] = r.agent + 1;
      row["holds"] = r.holds;
      row["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
      rows.push_back(std::move(row));
    }
    doc["assumption2"] = std::move(rows);
    Json weights = Json::array();
    for (const auto& c : mixture.components()) {
      weights.push_back({{"protocol", c.protocol->id()},
                         {"weight", to_fraction_string(c.weight)}});
    }
    doc["mixture"] = std::move(weights);
    doc["verdict"] = Json::parse(verdict_json(verdict));
    doc["total"] = to_fraction_string(mixed.total);
    doc["ir_total"] = to_fraction_string(ir_total);
    doc["epsilon"] = to_fraction_string(eps);
    doc["total_within_epsilon"] = total_ok;
    out << doc.dump(2) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows{{"agent", "assumption 2", "witness row"}};
    for (const auto& r : assumption) {
      rows.push_back({std::to_string(r.agent + 1), r.holds ? "holds" : "fails",
                      r.witness ? std::to_string(*r.witness) + " [" +
                                      inst.row_string(*r.witness) + "]"
                                : "-"});
    }
    out << columns(rows) << "\n";
    std::vector<std::vector<std::string>> mix{{"weight", "protocol"}};
    for (const auto& c : mixture.components()) {
      mix.push_back({to_string(c.weight), c.protocol->id()});
    }
    out << columns(mix) << "\n" << verdict_table(verdict) << "\n";
    out << "total: " << to_string(mixed.total) << " <= " << to_string(ir_total)
        << " + " << to_string(eps) << ": " << (total_ok ? "holds" : "FAILS") << "\n";
  }
  return strict && total_ok ? kExitOk : kExitVerdictFail;
}

std::string point_list(const Instance& inst, const Trace& trace) {
  std::string s;
  for (const Step& st : trace.steps) {
    if (!s.empty()) s += ",";
    s += inst.point_name(st.point);
  }
  return s;
}

int cmd_counterexample(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"table", "json"});
  if (o.from < 2 || o.to > 12 || o.from > o.to) {
    throw UsageError("n range must satisfy 2 <= from <= to <= 12");
  }
  const GbsPolicy gbs;
  bool all_match = true;
  std::vector<std::vector<std::string>> rows{
      {"n", "Q1 collaborative", "Q1 individual", "Q2 collaborative",
       "Q2 individual", "agent-1 queries", "trace (all-negative target)", "check"}};
  Json doc = Json::array();
  for (int n = o.from; n <= o.to; ++n) {
    const Instance inst = counterexample_instance(n);
    const ComplexityReport joint = label_complexity(gbs, inst, {0, 1});
    const Rational solo1 = label_complexity(gbs, inst, {0}).total;
    const Rational solo2 = label_complexity(gbs, inst, {1}).total;
    const Trace trace = simulate(gbs, inst, {0, 1}, 0);

    std::vector<Step> expected{{1, 0, false, true}};
    for (int l = 1; l <= n; ++l) {
      expected.push_back({0, static_cast<PointId>(l) + 2, false, true});
    }
    const bool match = trace.steps == expected;
    all_match = all_match && match;
    if (!match) {
      err << "n=" << n << ": trace " << point_list(inst, trace)
          << " differs from the expected sequence\n";
    }
    if (o.format == "json") {
      doc.push_back({{"n", n},
                     {"q1_collaborative", to_fraction_string(joint.per_agent[0])},
                     {"q1_individual", to_fraction_string(solo1)},
                     {"q2_collaborative", to_fraction_string(joint.per_agent[1])},
                     {"q2_individual", to_fraction_string(solo2)},
                     {"agent1_queries", trace.per_agent[0]},
                     {"trace", point_list(inst, trace)},
                     {"trace_matches", match}});
    } else {
      rows.push_back({std::to_string(n), to_string(joint.per_agent[0]),
                      to_string(solo1), to_string(joint.per_agent[1]),
                      to_string(solo2), std::to_string(trace.per_agent[0]),
                      point_list(inst, trace), match ? "ok" : "MISMATCH"});
    }
  }
  if (o.format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    out << columns(rows);
  }
  return all_match ? kExitOk : kExitInternal;
}

int cmd_tree(const Options& o, std::ostream& out) {
  if (o.format != "table") require_format(o, {"dot"});
  const Instance inst = load(o);
  const Selector sel = parse_selector(o.policy);
  if (!sel.is_plain_policy()) {
    throw UsageError("tree export needs a plain policy (gbs, opt, bisect, random:SEED)");
  }
  const AgentSet parts = parse_participants(o.participants, inst);
  const QueryTree tree = build_tree(*make_policy(sel, policy_options(o)), inst, parts);
  out << to_dot(tree, inst);
  return kExitOk;
}

int cmd_assumptions(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const Instance inst = load(o);
  const std::size_t cap = opt_cap();
  std::vector<std::vector<std::string>> rows{
      {"agent", "assumption 1", "gap", "assumption 2", "witness row"}};
  Json doc = Json::array();
  for (AgentId a = 0; a < inst.agent_count(); ++a) {
    std::optional<AssumptionReport> first;
    try {
      first = check_assumption1(inst, a, cap);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCapExceeded) throw;
    }
    const AssumptionReport second = check_assumption2(inst, a);
    if (o.format == "json") {
      Json row;
      row["agent"] = a + 1;
      if (first) {
        row["assumption1"] = {{"holds", first->holds},
                              {"gap", to_fraction_string(*first->gap)}};
      } else {
        row["assumption1"] = "skipped: cap";
      }
      row["assumption2"] = {
          {"holds", second.holds},
          {"witness", second.witness ? Json(*second.witness) : Json(nullptr)}};
      doc.push_back(std::move(row));
    } else {
      rows.push_back(
          {std::to_string(a + 1),
           first ? (first->holds ? "holds" : "fails") : "skipped: cap",
           first ? to_string(*first->gap) : "-", second.holds ? "holds" : "fails",
           second.witness ? std::to_string(*second.witness) + " [" +
                                inst.row_string(*second.witness) + "]"
                          : "-"});
    }
  }
  out << (o.format == "json" ? doc.dump(2) + "\n" : columns(rows));
  return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  require_format(o, {"table", "json"});
  const Instance inst = load(o);
  const AgentSet parts = parse_participants(o.participants, inst);
  const BoundMargin margin = gbs_bound_margin(inst, parts, opt_cap());
  out << (o.format == "json" ? bound_json(margin) : bound_table(margin));
  return margin.status() == BoundStatus::kFails ? kExitVerdictFail : kExitOk;
}

int cmd_make_instance(const Options& o, std::ostream& out) {
  std::optional<Instance> inst;
  if (o.kind == "fig1") {
    inst = fig1_instance();
  } else if (o.kind == "counterexample") {
    inst = counterexample_instance(o.n);
  } else if (o.kind == "random") {
    RandomInstanceParams p;
    p.seed = o.seed;
    p.pool_size = o.pool;
    p.class_size = o.class_size;
    p.agents = o.agents;
    p.share_prob = o.share_prob;
    p.prior_shape = o.prior == "random" ? PriorShape::kRandom : PriorShape::kUniform;
    inst = random_instance(p);
  } else {
    std::vector<std::vector<double>> agents;
    for (const auto& a : o.agent_values) agents.push_back(parse_doubles(a));
    inst = thresholds_instance(parse_doubles(o.grid), agents);
  }
  if (o.output.empty()) {
    save_instance(*inst, out);
  } else {
    save_instance(*inst, std::filesystem::path(o.output));
  }
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCapExceeded:
    case ErrorCode::kPolicyViolation:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Collaborative Bayesian active learning: policies, exact label "
               "complexity and incentive checks"};
  app.name("collabal");
  app.require_subcommand(1);

  auto add_instance = [&](CLI::App* c) {
    c->add_option("--instance", o.instance, "instance JSON document")
        ->required();
  };
  auto add_common = [&](CLI::App* c) {
    c->add_option("--participants", o.participants,
                  "comma-separated 1-based agents (default: all)");
    c->add_option("--tie-break", o.tie_break, "owner rule for shared points")
        ->check(CLI::IsMember({"smallest", "least-loaded"}));
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "table | json | dot")
        ->check(CLI::IsMember({"table", "json", "dot"}));
  };

  auto* eval = app.add_subcommand("eval", "expected label complexity of a policy");
  add_instance(eval);
  eval->add_option("--policy", o.policy, "policy or protocol selector");
  add_common(eval);
  add_format(eval);

  auto* check_ir = app.add_subcommand("check-ir", "individual-rationality verdict");
  add_instance(check_ir);
  check_ir->add_option("--collab", o.collab, "collaborative selector")->required();
  check_ir->add_option("--baseline", o.baseline, "baseline policy selector");
  add_common(check_ir);
  add_format(check_ir);

  auto* check_sir = app.add_subcommand("check-sir", "strict-IR mixture verdict");
  add_instance(check_sir);
  check_sir->add_option("--baseline", o.baseline, "baseline policy selector");
  check_sir->add_option("--epsilon", o.epsilon, "mixing budget, e.g. 1/10")->required();
  check_sir->add_option("--tie-break", o.tie_break, "owner rule for shared points")
      ->check(CLI::IsMember({"smallest", "least-loaded"}));
  add_format(check_sir);

  auto* cex = app.add_subcommand("counterexample", "scan the GBS counterexample family");
  cex->add_option("--from", o.from, "smallest n (>= 2)");
  cex->add_option("--to", o.to, "largest n (<= 12)");
  add_format(cex);

  auto* tree = app.add_subcommand("tree", "export a policy's query tree as DOT");
  add_instance(tree);
  tree->add_option("--policy", o.policy, "plain policy selector");
  add_common(tree);
  add_format(tree);

  auto* assumptions = app.add_subcommand("assumptions", "per-agent assumption checks");
  add_instance(assumptions);
  add_format(assumptions);

  auto* bound = app.add_subcommand("bound", "GBS cost against 4 OPT log(1/min prior)");
  add_instance(bound);
  bound->add_option("--participants", o.participants,
                    "comma-separated 1-based agents (default: all)");
  add_format(bound);

  auto* make = app.add_subcommand("make-instance", "write an instance document");
  make->add_option("--kind", o.kind, "fig1 | counterexample | random | thresholds")
      ->check(CLI::IsMember({"fig1", "counterexample", "random", "thresholds"}));
  make->add_option("--n", o.n, "counterexample size");
  make->add_option("--seed", o.seed, "random seed");
  make->add_option("--m", o.pool, "random pool size");
  make->add_option("--class-size", o.class_size, "random class size");
  make->add_option("--agents", o.agents, "random agent count");
  make->add_option("--share-prob", o.share_prob, "random sharing probability");
  make->add_option("--prior", o.prior, "uniform | random")
      ->check(CLI::IsMember({"uniform", "random"}));
  make->add_option("--grid", o.grid, "thresholds, comma separated");
  make->add_option("--agent-points", o.agent_values,
                   "one comma-separated value list per agent");
  make->add_option("--output", o.output, "path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (check_ir->parsed()) return cmd_check_ir(o, out);
    if (check_sir->parsed()) return cmd_check_sir(o, out);
    if (cex->parsed()) return cmd_counterexample(o, out, err);
    if (tree->parsed()) return cmd_tree(o, out);
    if (assumptions->parsed()) return cmd_assumptions(o, out);
    if (bound->parsed()) return cmd_bound(o, out);
    if (make->parsed()) return cmd_make_instance(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace collab
