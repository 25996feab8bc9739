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

#include "collab/query_tree.hpp"

#include <algorithm>
#include <sstream>

#include "collab/error.hpp"

namespace collab {
namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Policy& policy, const Instance& instance,
              const Weights& weights, const AgentSet& participants)
      : policy_(policy),
        instance_(instance),
        weights_(weights),
        participants_(participants),
        points_(instance.points_of(participants)),
        assigned_(instance.agent_count(), 0),
        queried_(instance.pool_size()) {}

  int expand(const VersionSpace& vs) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(TreeNode{std::nullopt, {-1, -1}, vs, {}});
    const bool resolved = is_resolved(instance_, vs, points_);
    const QueryState state{instance_, weights_, participants_, points_,
                           vs,        history_, assigned_};
    const std::optional<Query> q = policy_.next(state);
    if (!q) {
      if (!resolved) fail("stopped before resolving its points");
      nodes_[index].labeling =
          instance_.labeling_of(vs.members().find_first(), points_);
      return index;
    }
    if (resolved) fail("queried after its points were resolved");
    if (!std::binary_search(participants_.begin(), participants_.end(),
                            q->agent) ||
        q->point >= instance_.pool_size() ||
        !instance_.owns(q->agent, q->point)) {
      fail("issued a query outside its participants' points");
    }
    if (queried_.test(q->point)) fail("re-queried a point");
    nodes_[index].query = *q;

    const Split parts = split(instance_, vs, q->point);
    queried_.set(q->point);
    ++assigned_[q->agent];
    for (bool label : {false, true}) {
      const VersionSpace& side = parts.side(label);
      if (side.empty()) continue;
      history_.push_back(Step{q->agent, q->point, label, true});
      const int child = expand(side);
      nodes_[index].child[label ? 1 : 0] = child;
      history_.pop_back();
    }
    --assigned_[q->agent];
    queried_.reset(q->point);
    return index;
  }

  std::vector<TreeNode> take() { return std::move(nodes_); }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kPolicyViolation,
                policy_.id() + " " + what + " at depth " +
                    std::to_string(history_.size()));
  }

  const Policy& policy_;
  const Instance& instance_;
  const Weights& weights_;
  const AgentSet& participants_;
  std::vector<PointId> points_;
  std::vector<std::size_t> assigned_;
  Bits queried_;
  std::vector<Step> history_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

std::size_t QueryTree::internal_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return !n.is_leaf(); }));
}

std::size_t QueryTree::leaf_count() const {
  return nodes_.size() - internal_count();
}

std::vector<Query> QueryTree::path(const Instance& instance,
                                   HypothesisId h) const {
  std::vector<Query> out;
  int at = 0;
  while (at >= 0 && !nodes_[at].is_leaf()) {
    const Query& q = *nodes_[at].query;
    out.push_back(q);
    at = nodes_[at].child[instance.label(h, q.point) ? 1 : 0];
  }
  return out;
}

QueryTree build_tree(const Policy& policy, const Instance& instance,
                     const AgentSet& participants) {
  return build_tree(policy, instance, instance.prior(), participants,
                    VersionSpace::full(instance.hypothesis_count()));
}

QueryTree build_tree(const Policy& policy, const Instance& instance,
                     const Weights& weights, const AgentSet& participants,
                     const VersionSpace& start) {
  if (start.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty starting version space");
  }
  TreeBuilder builder(policy, instance, weights, participants);
  builder.expand(start);
  return QueryTree(builder.take(), participants);
}

std::optional<Query> TreePolicy::next(const QueryState& state) const {
  int at = 0;
  for (const Step& s : state.history) {
    const TreeNode& node = tree_.node(at);
    if (node.is_leaf() || node.query->point != s.point) {
      throw Error(ErrorCode::kPolicyViolation,
                  id_ + ": history diverges from the tree");
    }
    at = node.child[s.label ? 1 : 0];
    if (at < 0) {
      throw Error(ErrorCode::kPolicyViolation,
                  id_ + ": history follows an unrealized branch");
    }
  }
  return tree_.node(at).query;
}

std::string to_dot(const QueryTree& tree, const Instance& instance) {
  std::ostringstream out;
  out << "digraph query_tree {\n";
  for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
    const TreeNode& node = tree.node(i);
    if (node.is_leaf()) {
      out << "  n" << i << " [shape=box, label=\"" << node.labeling << "\"];\n";
      continue;
    }
    out << "  n" << i << " [label=\"" << node.query->agent + 1 << ":"
        << instance.point_name(node.query->point) << "\"];\n";
    for (int label = 0; label < 2; ++label) {
      if (node.child[label] < 0) continue;
      out << "  n" << i << " -> n" << node.child[label] << " [label=\""
          << label << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace collab
