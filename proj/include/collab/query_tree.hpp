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

#ifndef COLLAB_QUERY_TREE_HPP_
#define COLLAB_QUERY_TREE_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "collab/model.hpp"
#include "collab/policy.hpp"

namespace collab {

struct TreeNode {
  std::optional<Query> query;         // empty at leaves
  std::array<int, 2> child = {-1, -1};  // by label; -1 when unrealized
  VersionSpace version_space;
  Labeling labeling;                  // leaves only: participant points

  bool is_leaf() const { return !query.has_value(); }
};

// Explicit decision tree of a deterministic policy. Node 0 is the root and
// nodes are stored in preorder (label-0 subtree before label-1 subtree).
class QueryTree {
 public:
  QueryTree() = default;
  QueryTree(std::vector<TreeNode> nodes, AgentSet participants)
      : nodes_(std::move(nodes)), participants_(std::move(participants)) {}

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(std::size_t i) const { return nodes_[i]; }
  const TreeNode& root() const { return nodes_.front(); }
  const AgentSet& participants() const { return participants_; }

  std::size_t internal_count() const;
  std::size_t leaf_count() const;

  // Queries on the root-to-leaf path selected by hypothesis `h`.
  std::vector<Query> path(const Instance& instance, HypothesisId h) const;

 private:
  std::vector<TreeNode> nodes_;
  AgentSet participants_;
};

// Expands `policy` over every realizable label outcome. Throws
// kPolicyViolation under the same conditions as run_policy.
QueryTree build_tree(const Policy& policy, const Instance& instance,
                     const AgentSet& participants);
QueryTree build_tree(const Policy& policy, const Instance& instance,
                     const Weights& weights, const AgentSet& participants,
                     const VersionSpace& start);

// Replays an explicit tree as a policy.
class TreePolicy final : public Policy {
 public:
  TreePolicy(QueryTree tree, std::string id)
      : tree_(std::move(tree)), id_(std::move(id)) {}
  std::string id() const override { return id_; }
  std::optional<Query> next(const QueryState& state) const override;
  const QueryTree& tree() const { return tree_; }

 private:
  QueryTree tree_;
  std::string id_;
};

// Graphviz text. Internal nodes are labeled "agent:point" with 1-based agents,
// edges "0"/"1", leaves the labeling bit-string.
std::string to_dot(const QueryTree& tree, const Instance& instance);

}  // namespace collab

#endif  // COLLAB_QUERY_TREE_HPP_
