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

#include "collab/model.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "collab/error.hpp"

namespace collab {

AgentSet all_agents(std::size_t k) {
  AgentSet agents(k);
  std::iota(agents.begin(), agents.end(), AgentId{0});
  return agents;
}

AgentSet all_agents_except(std::size_t k, AgentId excluded) {
  AgentSet agents;
  for (AgentId a = 0; a < k; ++a) {
    if (a != excluded) agents.push_back(a);
  }
  return agents;
}

std::size_t BitsHash::operator()(const Bits& bits) const noexcept {
  std::size_t seed = bits.size();
  std::vector<Bits::block_type> blocks(bits.num_blocks());
  boost::to_block_range(bits, blocks.begin());
  for (auto block : blocks) boost::hash_combine(seed, block);
  return seed;
}

VersionSpace VersionSpace::full(std::size_t hypothesis_count) {
  Bits bits(hypothesis_count);
  bits.set();
  return VersionSpace(std::move(bits));
}

VersionSpace VersionSpace::none(std::size_t hypothesis_count) {
  return VersionSpace(Bits(hypothesis_count));
}

VersionSpace VersionSpace::of(std::size_t hypothesis_count,
                              std::span<const HypothesisId> rows) {
  Bits bits(hypothesis_count);
  for (HypothesisId h : rows) bits.set(h);
  return VersionSpace(std::move(bits));
}

std::vector<HypothesisId> VersionSpace::ids() const {
  std::vector<HypothesisId> out;
  out.reserve(members_.count());
  for (auto h = members_.find_first(); h != Bits::npos;
       h = members_.find_next(h)) {
    out.push_back(h);
  }
  return out;
}

Weights::Weights(std::vector<Rational> masses) : masses_(std::move(masses)) {
  denominator_ = 1;
  for (const auto& m : masses_) {
    denominator_ = boost::multiprecision::lcm(denominator_, boost::multiprecision::denominator(m));
  }
  scaled_.reserve(masses_.size());
  for (const auto& m : masses_) {
    scaled_.push_back(boost::multiprecision::numerator(m) * (denominator_ / boost::multiprecision::denominator(m)));
  }
}

BigInt Weights::scaled_mass(const VersionSpace& vs) const {
  BigInt total = 0;
  const Bits& bits = vs.members();
  for (auto h = bits.find_first(); h != Bits::npos; h = bits.find_next(h)) {
    total += scaled_[h];
  }
  return total;
}

Rational Weights::mass(const VersionSpace& vs) const {
  return Rational(scaled_mass(vs), denominator_);
}

VersionSpace Weights::support() const {
  Bits bits(masses_.size());
  for (std::size_t h = 0; h < masses_.size(); ++h) {
    if (masses_[h] > 0) bits.set(h);
  }
  return VersionSpace(std::move(bits));
}

std::vector<PointId> Instance::points_of(const AgentSet& participants) const {
  Bits mask(pool_size());
  for (AgentId a : participants) mask |= agent_masks_[a];
  std::vector<PointId> out;
  for (auto x = mask.find_first(); x != Bits::npos; x = mask.find_next(x)) {
    out.push_back(x);
  }
  return out;
}

std::vector<PointId> Instance::points_outside(AgentId agent) const {
  return points_of(all_agents_except(agent_count(), agent));
}

Labeling Instance::row_string(HypothesisId h) const {
  Labeling out(pool_size(), '0');
  for (PointId x = 0; x < pool_size(); ++x) {
    if (rows_[h].test(x)) out[x] = '1';
  }
  return out;
}

Labeling Instance::labeling_of(HypothesisId h,
                               std::span<const PointId> points) const {
  Labeling out;
  out.reserve(points.size());
  for (PointId x : points) out.push_back(rows_[h].test(x) ? '1' : '0');
  return out;
}

InstanceData Instance::data() const {
  InstanceData raw;
  raw.point_names = point_names_;
  for (HypothesisId h = 0; h < hypothesis_count(); ++h) {
    raw.hypotheses.push_back(row_string(h));
  }
  raw.prior = prior_.masses();
  raw.agents = agents_;
  return raw;
}

bool Instance::operator==(const Instance& other) const {
  return point_names_ == other.point_names_ && rows_ == other.rows_ &&
         prior_.masses() == other.prior_.masses() && agents_ == other.agents_;
}

Instance validate_instance(InstanceData raw) {
  if (raw.hypotheses.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "instance has no hypotheses");
  }
  const std::size_t m = raw.point_names.empty() ? raw.hypotheses.front().size()
                                                : raw.point_names.size();
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "pool is empty");
  if (raw.point_names.empty()) {
    for (std::size_t x = 0; x < m; ++x) {
      raw.point_names.push_back("x" + std::to_string(x));
    }
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : raw.point_names) {
      if (name.empty() || !seen.insert(name).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "point names must be non-empty and distinct ('" + name +
                        "')");
      }
    }
  }
  const std::size_t n = raw.hypotheses.size();
  if (raw.prior.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "prior has " + std::to_string(raw.prior.size()) +
                    " entries for " + std::to_string(n) + " hypotheses");
  }
  for (std::size_t h = 0; h < n; ++h) {
    const auto& row = raw.hypotheses[h];
    if (row.size() != m ||
        row.find_first_not_of("01") != Labeling::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "hypothesis " + std::to_string(h) + " is not a 0/1 string of length " +
                      std::to_string(m));
    }
  }
  if (raw.agents.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "instance has no agents");
  }
  for (std::size_t a = 0; a < raw.agents.size(); ++a) {
    auto& points = raw.agents[a];
    if (points.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(a + 1) + " owns no points");
    }
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end() ||
        points.back() >= m) {
      throw Error(ErrorCode::kInvalidArgument,
                  "agent " + std::to_string(a + 1) +
                      " lists a duplicate or out-of-range point");
    }
  }

  Rational total = 0;
  for (std::size_t h = 0; h < n; ++h) {
    if (raw.prior[h] <= 0) {
      throw Error(ErrorCode::kNonPositiveMass,
                  "hypothesis " + std::to_string(h) + " has mass " +
                      to_string(raw.prior[h]));
    }
    total += raw.prior[h];
  }
  if (total != 1) {
    throw Error(ErrorCode::kPriorNotNormalized,
                "prior sums to " + to_string(total));
  }
  {
    std::unordered_set<std::string> seen;
    for (std::size_t h = 0; h < n; ++h) {
      if (!seen.insert(raw.hypotheses[h]).second) {
        throw Error(ErrorCode::kDuplicateHypothesis,
                    "hypothesis " + std::to_string(h) + " repeats labeling " +
                        raw.hypotheses[h]);
      }
    }
  }

  static std::atomic<std::uint64_t> next_uid{1};
  Instance instance;
  instance.uid_ = next_uid.fetch_add(1);
  instance.point_names_ = std::move(raw.point_names);
  instance.rows_.assign(n, Bits(m));
  instance.columns_.assign(m, Bits(n));
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t x = 0; x < m; ++x) {
      if (raw.hypotheses[h][x] == '1') {
        instance.rows_[h].set(x);
        instance.columns_[x].set(h);
      }
    }
  }
  instance.owners_.assign(m, {});
  instance.agent_masks_.assign(raw.agents.size(), Bits(m));
  for (AgentId a = 0; a < raw.agents.size(); ++a) {
    for (PointId x : raw.agents[a]) {
      instance.agent_masks_[a].set(x);
      instance.owners_[x].push_back(a);
    }
  }
  for (PointId x = 0; x < m; ++x) {
    if (instance.owners_[x].empty()) {
      throw Error(ErrorCode::kUncoveredPoint,
                  "point '" + instance.point_names_[x] + "' has no owner");
    }
  }
  instance.agents_ = std::move(raw.agents);
  instance.prior_ = Weights(std::move(raw.prior));
  return instance;
}

Split split(const Instance& instance, const VersionSpace& vs, PointId point) {
  const Bits& pos = instance.positives(point);
  return Split{VersionSpace(vs.members() - pos), VersionSpace(vs.members() & pos)};
}

std::optional<VersionSpace> restrict(const Instance& instance,
                                     const VersionSpace& vs, PointId point,
                                     bool label) {
  VersionSpace out(label ? (vs.members() & instance.positives(point))
                         : (vs.members() - instance.positives(point)));
  if (out.empty()) return std::nullopt;
  return out;
}

SplitMasses split_masses(const Instance& instance, const VersionSpace& vs,
                         PointId point) {
  return split_masses(instance, instance.prior(), vs, point);
}

SplitMasses split_masses(const Instance& instance, const Weights& weights,
                         const VersionSpace& vs, PointId point) {
  const Split parts = split(instance, vs, point);
  return SplitMasses{weights.mass(parts.negative), weights.mass(parts.positive)};
}

bool is_split(const Instance& instance, const VersionSpace& vs, PointId point) {
  const Bits& pos = instance.positives(point);
  return vs.members().intersects(pos) && !vs.members().is_subset_of(pos);
}

bool is_resolved(const Instance& instance, const VersionSpace& vs,
                 std::span<const PointId> points) {
  return std::none_of(points.begin(), points.end(), [&](PointId x) {
    return is_split(instance, vs, x);
  });
}

Evidence::Evidence(const Instance& instance)
    : version_space_(VersionSpace::full(instance.hypothesis_count())) {}

Evidence::Evidence(const Instance& instance, std::vector<EvidenceRecord> records)
    : records_(std::move(records)),
      version_space_(VersionSpace::full(instance.hypothesis_count())) {
  for (const auto& r : records_) {
    if (r.agent >= instance.agent_count() || r.point >= instance.pool_size() ||
        !instance.owns(r.agent, r.point)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "evidence record for point " + std::to_string(r.point) +
                      " is not owned by agent " + std::to_string(r.agent + 1));
    }
    auto next = restrict(instance, version_space_, r.point, r.label);
    if (!next) {
      throw Error(ErrorCode::kInconsistentEvidence,
                  "no hypothesis labels '" + instance.point_name(r.point) +
                      "' as " + (r.label ? "1" : "0") +
                      " given the earlier records");
    }
    version_space_ = std::move(*next);
  }
}

Evidence Evidence::labeled_by(const Instance& instance,
                              std::span<const PointId> points, HypothesisId h,
                              const AgentSet& allowed) {
  std::vector<EvidenceRecord> records;
  records.reserve(points.size());
  for (PointId x : points) {
    const auto& owners = instance.owners(x);
    auto it = std::find_first_of(owners.begin(), owners.end(), allowed.begin(),
                                 allowed.end());
    if (it == owners.end()) {
      throw Error(ErrorCode::kNoOwner, "point '" + instance.point_name(x) +
                                           "' has no owner in the agent set");
    }
    records.push_back({*it, x, instance.label(h, x)});
  }
  return Evidence(instance, std::move(records));
}

Evidence Evidence::outside_agent(const Instance& instance, AgentId agent,
                                 HypothesisId h) {
  const auto points = instance.points_outside(agent);
  return labeled_by(instance, points, h,
                    all_agents_except(instance.agent_count(), agent));
}

bool Evidence::covers(PointId point) const {
  return std::any_of(records_.begin(), records_.end(),
                     [&](const EvidenceRecord& r) { return r.point == point; });
}

PosteriorPrior posterior_on(const Instance& instance, const VersionSpace& vs) {
  if (vs.empty()) {
    throw Error(ErrorCode::kInconsistentEvidence,
                "cannot condition on an empty version space");
  }
  const Weights& prior = instance.prior();
  const Rational total = prior.mass(vs);
  std::vector<Rational> masses(instance.hypothesis_count(), Rational(0));
  for (HypothesisId h : vs.ids()) masses[h] = prior[h] / total;
  return PosteriorPrior{Weights(std::move(masses)), vs};
}

PosteriorPrior posterior_given_evidence(const Instance& instance,
                                        const Evidence& evidence) {
  return posterior_on(instance, evidence.version_space());
}

std::set<Labeling> labelings_of(const Instance& instance,
                                std::span<const PointId> points,
                                const Evidence& evidence) {
  std::set<Labeling> out;
  for (HypothesisId h : evidence.version_space().ids()) {
    out.insert(instance.labeling_of(h, points));
  }
  return out;
}

}  // namespace collab
