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

#ifndef COLLAB_INSTANCES_HPP_
#define COLLAB_INSTANCES_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "collab/model.hpp"

namespace collab {

// One row per threshold a, labeling x positive iff x >= a. The pool is the
// union of the agents' values in ascending order, named by their shortest
// decimal form. Rows with equal labelings are merged and their masses added.
Instance thresholds_instance(const std::vector<double>& grid,
                             const std::vector<std::vector<double>>& agent_points);

// Four thresholds, two agents with interleaved points.
Instance fig1_instance();

// The family on which collaborative GBS is not individually rational.
// Points (1,0,0),(0,1,0),(0,2,0),(0,0,1)..(0,0,n); agent 1 owns all but the
// first, agent 2 owns only the first. Requires n >= 2.
Instance counterexample_instance(int n);

enum class PriorShape { kUniform, kRandom };

struct RandomInstanceParams {
  std::uint64_t seed = 0;
  std::size_t pool_size = 6;
  std::size_t class_size = 8;
  std::size_t agents = 2;
  double share_prob = 0.0;
  PriorShape prior_shape = PriorShape::kUniform;
};

// Deterministic in the parameters. Throws kInfeasibleParameters.
Instance random_instance(const RandomInstanceParams& params);

inline constexpr int kSchemaVersion = 1;

std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& instance, std::ostream& out);
void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(std::istream& in);
Instance load_instance(const std::filesystem::path& path);

}  // namespace collab

#endif  // COLLAB_INSTANCES_HPP_
