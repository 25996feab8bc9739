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

#ifndef COLLAB_TESTS_SUPPORT_FIXTURES_HPP_
#define COLLAB_TESTS_SUPPORT_FIXTURES_HPP_

// Hand-written instances used across tests.

#include "collab/model.hpp"
#include "collab/query_tree.hpp"

namespace collab::testing {

// Thresholds 0.2, 0.4, 0.6, 0.8 over the pool
// 0.25 0.3 0.45 0.5 0.55 0.7 0.75 (indices 0..6).
// Agent 1 holds 0.25, 0.5, 0.75; agent 2 holds the rest.
inline InstanceData fig1_data() {
  InstanceData d;
  d.point_names = {"0.25", "0.3", "0.45", "0.5", "0.55", "0.7", "0.75"};
  d.hypotheses = {"1111111", "0011111", "0000011", "0000000"};
  d.prior = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  d.agents = {{0, 3, 6}, {1, 2, 4, 5}};
  return d;
}

inline Instance fig1() { return validate_instance(fig1_data()); }

inline constexpr HypothesisId kAt02 = 0, kAt04 = 1, kAt06 = 2, kAt08 = 3;
inline constexpr PointId kP025 = 0, kP03 = 1, kP045 = 2, kP05 = 3, kP055 = 4,
                         kP07 = 5, kP075 = 6;

// The drawn binary-search tree: 0.5 at the root (agent 1), then 0.7 on the
// negative side and 0.3 on the positive side (both agent 2).
inline QueryTree fig1_fixture_tree(const Instance& inst) {
  const VersionSpace all = VersionSpace::full(4);
  auto only = [](std::initializer_list<HypothesisId> rows) {
    std::vector<HypothesisId> v(rows);
    return VersionSpace::of(4, v);
  };
  auto leaf = [&](HypothesisId h) {
    TreeNode n;
    n.version_space = only({h});
    n.labeling = inst.row_string(h);
    return n;
  };
  std::vector<TreeNode> nodes(7);
  nodes[0].query = Query{0, kP05};
  nodes[0].child = {1, 4};
  nodes[0].version_space = all;
  nodes[1].query = Query{1, kP07};
  nodes[1].child = {2, 3};
  nodes[1].version_space = only({kAt06, kAt08});
  nodes[2] = leaf(kAt08);
  nodes[3] = leaf(kAt06);
  nodes[4].query = Query{1, kP03};
  nodes[4].child = {5, 6};
  nodes[4].version_space = only({kAt02, kAt04});
  nodes[5] = leaf(kAt04);
  nodes[6] = leaf(kAt02);
  return QueryTree(std::move(nodes), {0, 1});
}

// Two agents whose points are disjoint and whose labels are independent:
// every labeling of the pool is a hypothesis.
inline InstanceData independent_data() {
  InstanceData d;
  d.hypotheses = {"00", "01", "10", "11"};
  d.prior = {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)};
  d.agents = {{0}, {1}};
  return d;
}

}  // namespace collab::testing

#endif  // COLLAB_TESTS_SUPPORT_FIXTURES_HPP_
