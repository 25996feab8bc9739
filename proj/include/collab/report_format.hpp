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

#ifndef COLLAB_REPORT_FORMAT_HPP_
#define COLLAB_REPORT_FORMAT_HPP_

// Text and JSON renderings. Tables print rationals in lowest terms with
// integers bare; JSON always uses "p/q" strings.

#include <string>
#include <vector>

#include "collab/evaluation.hpp"
#include "collab/transforms.hpp"

namespace collab {

std::string report_table(const ComplexityReport& report);
std::string report_json(const ComplexityReport& report);

std::string verdict_table(const IRVerdict& verdict);
std::string verdict_json(const IRVerdict& verdict);

std::string bound_table(const BoundMargin& margin);
std::string bound_json(const BoundMargin& margin);

// Renders rows as left-aligned columns separated by two spaces.
std::string columns(const std::vector<std::vector<std::string>>& rows);

std::string agent_list(const AgentSet& agents);  // 1-based, comma separated

}  // namespace collab

#endif  // COLLAB_REPORT_FORMAT_HPP_
