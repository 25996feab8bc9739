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

#include "collab/instances.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "collab/error.hpp"
#include "json.hpp"

namespace collab {
namespace {

using Json = nlohmann::ordered_json;

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " value is not finite");
  }
}

[[noreturn]] void infeasible(const std::string& why) {
  throw Error(ErrorCode::kInfeasibleParameters, why);
}

[[noreturn]] void parse_error(const std::string& why) {
  throw Error(ErrorCode::kParseError, why);
}

// Line and column (1-based) of byte offset `pos`.
std::string locate(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const Json& field(const Json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) parse_error(std::string("missing field '") + name + "'");
  return *it;
}

const Json& array_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_array()) parse_error(std::string("field '") + name + "' must be an array");
  return v;
}

std::string string_at(const Json& v, const std::string& where) {
  if (!v.is_string()) parse_error("field '" + where + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

Instance thresholds_instance(const std::vector<double>& grid,
                             const std::vector<std::vector<double>>& agent_points) {
  if (grid.empty()) throw Error(ErrorCode::kEmptyGrid, "threshold grid is empty");
  for (double a : grid) require_finite(a, "threshold");
  if (std::set<double>(grid.begin(), grid.end()).size() != grid.size()) {
    throw Error(ErrorCode::kInvalidArgument, "threshold grid has duplicates");
  }
  std::vector<double> pool;
  for (const auto& pts : agent_points) {
    for (double x : pts) require_finite(x, "pool");
    if (std::set<double>(pts.begin(), pts.end()).size() != pts.size()) {
      throw Error(ErrorCode::kInvalidArgument, "agent lists a point twice");
    }
    pool.insert(pool.end(), pts.begin(), pts.end());
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  InstanceData raw;
  for (double x : pool) raw.point_names.push_back(shortest(x));
  std::map<Labeling, Rational> merged;
  std::vector<Labeling> order;
  const Rational each(1, static_cast<long>(grid.size()));
  for (double a : grid) {
    Labeling row;
    for (double x : pool) row.push_back(x >= a ? '1' : '0');
    auto [it, fresh] = merged.emplace(row, Rational(0));
    if (fresh) order.push_back(row);
    it->second += each;
  }
  for (const auto& row : order) {
    raw.hypotheses.push_back(row);
    raw.prior.push_back(merged[row]);
  }
  for (const auto& pts : agent_points) {
    std::vector<PointId> ids;
    for (double x : pts) {
      ids.push_back(std::lower_bound(pool.begin(), pool.end(), x) - pool.begin());
    }
    std::sort(ids.begin(), ids.end());
    raw.agents.push_back(std::move(ids));
  }
  return validate_instance(std::move(raw));
}

Instance fig1_instance() {
  return thresholds_instance({0.2, 0.4, 0.6, 0.8},
                             {{0.25, 0.5, 0.75}, {0.3, 0.45, 0.55, 0.7}});
}

Instance counterexample_instance(int n) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "counterexample needs n >= 2");
  }
  const std::size_t m = static_cast<std::size_t>(n) + 3;
  InstanceData raw;
  raw.point_names = {"(1,0,0)", "(0,1,0)", "(0,2,0)"};
  for (int l = 1; l <= n; ++l) raw.point_names.push_back("(0,0," + std::to_string(l) + ")");

  // Row with (i,0,0), (0,j,0) and (0,0,l) positive; zero coordinates name no point.
  auto row = [&](int i, int j, int l) {
    Labeling r(m, '0');
    if (i == 1) r[0] = '1';
    if (j > 0) r[static_cast<std::size_t>(j)] = '1';
    if (l > 0) r[static_cast<std::size_t>(l) + 2] = '1';
    return r;
  };
  const BigInt top = boost::multiprecision::pow(BigInt(3), n - 1);

  raw.hypotheses.push_back(row(0, 0, 0));
  raw.prior.push_back(Rational(1, 4));
  for (int j = 1; j <= 2; ++j) {
    for (int l = 1; l <= n; ++l) {
      raw.hypotheses.push_back(row(0, j, l));
      raw.prior.push_back(l < n ? Rational(BigInt(1), 4 * boost::multiprecision::pow(BigInt(3), l))
                                : Rational(BigInt(1), 8 * top));
    }
  }
  for (int l = 1; l <= n; ++l) {
    raw.hypotheses.push_back(row(1, 1, l));
    raw.prior.push_back(l < n ? Rational(BigInt(1), boost::multiprecision::pow(BigInt(3), l))
                              : Rational(BigInt(1), 2 * top));
  }
  std::vector<PointId> first;
  for (PointId x = 1; x < m; ++x) first.push_back(x);
  raw.agents = {first, {0}};
  return validate_instance(std::move(raw));
}

Instance random_instance(const RandomInstanceParams& p) {
  if (p.pool_size == 0) infeasible("pool must have at least one point");
  if (p.pool_size > 62) infeasible("pool larger than 62 points");
  if (p.class_size == 0) infeasible("class must have at least one row");
  if (p.class_size > (std::uint64_t{1} << p.pool_size)) {
    infeasible("class_size exceeds 2^m distinct rows");
  }
  if (p.agents == 0) infeasible("need at least one agent");
  if (p.agents > p.pool_size) infeasible("more agents than points");
  if (!(p.share_prob >= 0.0 && p.share_prob <= 1.0)) {
    infeasible("share_prob outside [0, 1]");
  }

  std::mt19937_64 rng(p.seed);
  const std::uint64_t cube = std::uint64_t{1} << p.pool_size;

  // Floyd's sampling of distinct codes, kept in draw order.
  std::set<std::uint64_t> taken;
  std::vector<std::uint64_t> codes;
  for (std::uint64_t j = cube - p.class_size; j < cube; ++j) {
    std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    if (!taken.insert(t).second) {
      taken.insert(j);
      t = j;
    }
    codes.push_back(t);
  }
  std::shuffle(codes.begin(), codes.end(), rng);

  InstanceData raw;
  for (std::uint64_t c : codes) {
    Labeling r(p.pool_size, '0');
    for (std::size_t x = 0; x < p.pool_size; ++x) {
      if ((c >> x) & 1U) r[x] = '1';
    }
    raw.hypotheses.push_back(std::move(r));
  }
  if (p.prior_shape == PriorShape::kUniform) {
    raw.prior.assign(p.class_size, Rational(1, static_cast<long>(p.class_size)));
  } else {
    std::uniform_int_distribution<int> draw(1, 100);
    std::vector<int> w;
    long total = 0;
    for (std::size_t h = 0; h < p.class_size; ++h) {
      w.push_back(draw(rng));
      total += w.back();
    }
    for (int v : w) raw.prior.emplace_back(v, total);
  }

  std::vector<std::set<PointId>> owned(p.agents);
  std::uniform_int_distribution<std::size_t> pick_agent(0, p.agents - 1);
  std::bernoulli_distribution share(p.share_prob);
  for (PointId x = 0; x < p.pool_size; ++x) {
    const std::size_t primary = pick_agent(rng);
    owned[primary].insert(x);
    for (std::size_t a = 0; a < p.agents; ++a) {
      if (a != primary && share(rng)) owned[a].insert(x);
    }
  }
  // Hand an empty agent a point taken from the agent holding the most.
  for (std::size_t a = 0; a < p.agents; ++a) {
    if (!owned[a].empty()) continue;
    auto donor = std::max_element(owned.begin(), owned.end(),
                                  [](const auto& l, const auto& r) { return l.size() < r.size(); });
    std::uniform_int_distribution<std::size_t> pick(0, donor->size() - 1);
    auto it = std::next(donor->begin(), static_cast<long>(pick(rng)));
    owned[a].insert(*it);
    if (donor->size() > 1) donor->erase(it);
  }
  for (const auto& s : owned) raw.agents.emplace_back(s.begin(), s.end());
  return validate_instance(std::move(raw));
}

std::string instance_to_json(const Instance& instance) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["points"] = instance.point_names();
  Json rows = Json::array();
  for (HypothesisId h = 0; h < instance.hypothesis_count(); ++h) {
    rows.push_back(instance.row_string(h));
  }
  doc["hypotheses"] = std::move(rows);
  Json prior = Json::array();
  for (const auto& w : instance.prior().masses()) prior.push_back(to_fraction_string(w));
  doc["prior"] = std::move(prior);
  Json agents = Json::array();
  for (AgentId a = 0; a < instance.agent_count(); ++a) {
    Json names = Json::array();
    for (PointId x : instance.agent_points(a)) names.push_back(instance.point_name(x));
    agents.push_back(std::move(names));
  }
  doc["agents"] = std::move(agents);
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_error("malformed JSON at " + locate(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  if (!doc.is_object()) parse_error("document must be a JSON object");

  const Json& schema = field(doc, "schema");
  if (!schema.is_number_integer() || schema.get<long>() != kSchemaVersion) {
    parse_error("field 'schema' must be " + std::to_string(kSchemaVersion));
  }
  InstanceData raw;
  const Json& points = array_field(doc, "points");
  std::map<std::string, PointId> index;
  for (std::size_t x = 0; x < points.size(); ++x) {
    raw.point_names.push_back(string_at(points[x], "points[" + std::to_string(x) + "]"));
    index.emplace(raw.point_names.back(), x);
  }
  const Json& rows = array_field(doc, "hypotheses");
  for (std::size_t h = 0; h < rows.size(); ++h) {
    raw.hypotheses.push_back(string_at(rows[h], "hypotheses[" + std::to_string(h) + "]"));
  }
  const Json& prior = array_field(doc, "prior");
  for (std::size_t h = 0; h < prior.size(); ++h) {
    const std::string where = "prior[" + std::to_string(h) + "]";
    const std::string s = string_at(prior[h], where);
    try {
      raw.prior.push_back(parse_rational(s));
    } catch (const Error& e) {
      parse_error("field '" + where + "': " + e.what());
    }
  }
  const Json& agents = array_field(doc, "agents");
  for (std::size_t a = 0; a < agents.size(); ++a) {
    const std::string where = "agents[" + std::to_string(a) + "]";
    if (!agents[a].is_array()) parse_error("field '" + where + "' must be an array");
    std::vector<PointId> ids;
    for (std::size_t j = 0; j < agents[a].size(); ++j) {
      const std::string name =
          string_at(agents[a][j], where + "[" + std::to_string(j) + "]");
      auto it = index.find(name);
      if (it == index.end()) {
        parse_error("field '" + where + "' names unknown point '" + name + "'");
      }
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    raw.agents.push_back(std::move(ids));
  }
  return validate_instance(std::move(raw));
}

void save_instance(const Instance& instance, std::ostream& out) {
  out << instance_to_json(instance);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  }
  save_instance(instance, out);
}

Instance load_instance(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read " + path.string());
  return load_instance(in);
}

}  // namespace collab
