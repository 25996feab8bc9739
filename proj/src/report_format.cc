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

#include "collab/report_format.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace collab {
namespace {

using Json = nlohmann::ordered_json;

std::string full_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json agent_numbers(const AgentSet& agents) {
  Json out = Json::array();
  for (AgentId a : agents) out.push_back(a + 1);
  return out;
}

}  // namespace

std::string columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string agent_list(const AgentSet& agents) {
  std::string out;
  for (AgentId a : agents) {
    if (!out.empty()) out += ",";
    out += std::to_string(a + 1);
  }
  return out;
}

std::string report_table(const ComplexityReport& report) {
  std::string out = "policy: " + report.policy + "\n" +
                    "participants: " + agent_list(report.participants) + "\n" +
                    "total: " + to_string(report.total) + "\n";
  std::vector<std::vector<std::string>> rows{{"agent", "expected queries"}};
  for (AgentId a = 0; a < report.per_agent.size(); ++a) {
    rows.push_back({std::to_string(a + 1), to_string(report.per_agent[a])});
  }
  return out + columns(rows);
}

std::string report_json(const ComplexityReport& report) {
  Json doc;
  doc["policy"] = report.policy;
  doc["participants"] = agent_numbers(report.participants);
  doc["total"] = to_fraction_string(report.total);
  Json agents = Json::array();
  for (const auto& q : report.per_agent) agents.push_back(to_fraction_string(q));
  doc["per_agent"] = std::move(agents);
  Json rows = Json::array();
  for (const auto& h : report.per_hypothesis) {
    Json row;
    row["queries"] = to_fraction_string(h.queries);
    Json per = Json::array();
    for (const auto& q : h.per_agent) per.push_back(to_fraction_string(q));
    row["per_agent"] = std::move(per);
    rows.push_back(std::move(row));
  }
  doc["per_hypothesis"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string verdict_table(const IRVerdict& verdict) {
  std::string out = "collaborative: " + verdict.collaborative + "\n" +
                    "baseline: " + verdict.baseline + "\n";
  std::vector<std::vector<std::string>> rows{
      {"agent", "collaborative", "individual", "status"}};
  for (const auto& v : verdict.agents) {
    std::string status(to_string(v.status));
    std::transform(status.begin(), status.end(), status.begin(), ::toupper);
    rows.push_back({std::to_string(v.agent + 1), to_string(v.collaborative),
                    to_string(v.individual), status});
  }
  return out + columns(rows);
}

std::string verdict_json(const IRVerdict& verdict) {
  Json doc;
  doc["collaborative"] = verdict.collaborative;
  doc["baseline"] = verdict.baseline;
  Json agents = Json::array();
  for (const auto& v : verdict.agents) {
    Json row;
    row["agent"] = v.agent + 1;
    row["collaborative"] = to_fraction_string(v.collaborative);
    row["individual"] = to_fraction_string(v.individual);
    row["status"] = std::string(to_string(v.status));
    agents.push_back(std::move(row));
  }
  doc["agents"] = std::move(agents);
  doc["individually_rational"] = verdict.individually_rational();
  doc["strictly_individually_rational"] = verdict.strictly_individually_rational();
  return doc.dump(2) + "\n";
}

std::string bound_table(const BoundMargin& margin) {
  return columns({
      {"gbs cost", to_string(margin.lhs)},
      {"optimal cost", to_string(margin.optimal)},
      {"min prior mass", to_string(margin.min_mass)},
      {"bound enclosure",
       "[" + full_double(margin.rhs.lo) + ", " + full_double(margin.rhs.hi) + "]"},
      {"status", std::string(to_string(margin.status()))},
  });
}

std::string bound_json(const BoundMargin& margin) {
  Json doc;
  doc["gbs_cost"] = to_fraction_string(margin.lhs);
  doc["optimal_cost"] = to_fraction_string(margin.optimal);
  doc["min_prior_mass"] = to_fraction_string(margin.min_mass);
  doc["bound_enclosure"] = {{"lo", margin.rhs.lo}, {"hi", margin.rhs.hi}};
  doc["status"] = std::string(to_string(margin.status()));
  return doc.dump(2) + "\n";
}

}  // namespace collab
