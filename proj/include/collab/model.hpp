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

#ifndef COLLAB_MODEL_HPP_
#define COLLAB_MODEL_HPP_

// Instance representation, version spaces and the prior/posterior arithmetic
// every other module builds on.
//
// Agents, points and hypotheses are addressed by 0-based indices. Hypotheses
// are rows of a dense bit matrix (row r, column c holds h_r(x_c)); the matrix
// is also kept column-major so that restricting a version space by a label is
// a single word-parallel AND.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "collab/rational.hpp"

namespace collab {

using PointId = std::size_t;
using AgentId = std::size_t;
using HypothesisId = std::size_t;

using Bits = boost::dynamic_bitset<std::uint64_t>;

// Labels of some ordered point list as a '0'/'1' string.
using Labeling = std::string;

// Sorted, duplicate-free list of agent indices.
using AgentSet = std::vector<AgentId>;

AgentSet all_agents(std::size_t k);
AgentSet all_agents_except(std::size_t k, AgentId excluded);

struct BitsHash {
  std::size_t operator()(const Bits& bits) const noexcept;
};

// Subset of hypothesis rows consistent with some history.
class VersionSpace {
 public:
  VersionSpace() = default;
  explicit VersionSpace(Bits members) : members_(std::move(members)) {}

  static VersionSpace full(std::size_t hypothesis_count);
  static VersionSpace none(std::size_t hypothesis_count);
  static VersionSpace of(std::size_t hypothesis_count,
                         std::span<const HypothesisId> rows);

  const Bits& members() const { return members_; }
  bool empty() const { return members_.none(); }
  std::size_t size() const { return members_.count(); }
  bool contains(HypothesisId h) const { return members_.test(h); }
  bool is_subset_of(const VersionSpace& other) const {
    return members_.is_subset_of(other.members_);
  }
  std::vector<HypothesisId> ids() const;

  VersionSpace operator&(const VersionSpace& other) const {
    return VersionSpace(members_ & other.members_);
  }
  bool operator==(const VersionSpace& other) const = default;

 private:
  Bits members_;
};

// Probability masses over hypothesis rows. Masses are also held as integer
// numerators over one common denominator so that version-space sums never
// need a gcd.
class Weights {
 public:
  Weights() = default;
  explicit Weights(std::vector<Rational> masses);

  std::size_t size() const { return masses_.size(); }
  const std::vector<Rational>& masses() const { return masses_; }
  const Rational& operator[](HypothesisId h) const { return masses_[h]; }

  const BigInt& denominator() const { return denominator_; }
  const BigInt& scaled(HypothesisId h) const { return scaled_[h]; }
  BigInt scaled_mass(const VersionSpace& vs) const;
  Rational mass(const VersionSpace& vs) const;

  // Rows with positive mass.
  VersionSpace support() const;

 private:
  std::vector<Rational> masses_;
  std::vector<BigInt> scaled_;
  BigInt denominator_{1};
};

// Unvalidated instance data, as read from a document or built by a
// constructor.
struct InstanceData {
  std::vector<std::string> point_names;  // may be empty: names default to "x<i>"
  std::vector<Labeling> hypotheses;      // one '0'/'1' string per row
  std::vector<Rational> prior;
  std::vector<std::vector<PointId>> agents;
};

class Instance {
 public:
  std::size_t pool_size() const { return point_names_.size(); }
  std::size_t hypothesis_count() const { return rows_.size(); }
  std::size_t agent_count() const { return agents_.size(); }

  bool label(HypothesisId h, PointId x) const { return rows_[h].test(x); }
  // Rows labeling `x` positive.
  const Bits& positives(PointId x) const { return columns_[x]; }

  const Weights& prior() const { return prior_; }
  const std::string& point_name(PointId x) const { return point_names_[x]; }
  const std::vector<std::string>& point_names() const { return point_names_; }

  // Ascending point indices owned by `agent`.
  const std::vector<PointId>& agent_points(AgentId agent) const {
    return agents_[agent];
  }
  bool owns(AgentId agent, PointId x) const { return agent_masks_[agent].test(x); }
  // Ascending agent indices owning `x`.
  const std::vector<AgentId>& owners(PointId x) const { return owners_[x]; }

  // Ascending union of the participants' point sets.
  std::vector<PointId> points_of(const AgentSet& participants) const;
  // Union of every agent's points except `agent` (X_{-i}).
  std::vector<PointId> points_outside(AgentId agent) const;

  Labeling row_string(HypothesisId h) const;
  Labeling labeling_of(HypothesisId h, std::span<const PointId> points) const;

  InstanceData data() const;

  // Process-unique identity of this instance's contents; copies share it.
  std::uint64_t uid() const { return uid_; }

  bool operator==(const Instance& other) const;

 private:
  friend Instance validate_instance(InstanceData raw);
  Instance() = default;

  std::uint64_t uid_ = 0;
  std::vector<std::string> point_names_;
  std::vector<Bits> rows_;
  std::vector<Bits> columns_;
  Weights prior_;
  std::vector<std::vector<PointId>> agents_;
  std::vector<Bits> agent_masks_;
  std::vector<std::vector<AgentId>> owners_;
};

// Throws Error with kNonPositiveMass, kPriorNotNormalized,
// kDuplicateHypothesis, kUncoveredPoint or kInvalidArgument (shape problems).
Instance validate_instance(InstanceData raw);

// Members of `vs` labeling `point` as `label`; std::nullopt when no member
// does, so callers can decide whether that is an error.
std::optional<VersionSpace> restrict(const Instance& instance,
                                     const VersionSpace& vs, PointId point,
                                     bool label);

// Both sides of the split at once; either may be empty.
struct Split {
  VersionSpace negative;
  VersionSpace positive;
  const VersionSpace& side(bool label) const { return label ? positive : negative; }
};
Split split(const Instance& instance, const VersionSpace& vs, PointId point);

struct SplitMasses {
  Rational mass0;
  Rational mass1;
};
SplitMasses split_masses(const Instance& instance, const VersionSpace& vs,
                         PointId point);
SplitMasses split_masses(const Instance& instance, const Weights& weights,
                         const VersionSpace& vs, PointId point);

// True when `vs` members disagree on `point`.
bool is_split(const Instance& instance, const VersionSpace& vs, PointId point);

bool is_resolved(const Instance& instance, const VersionSpace& vs,
                 std::span<const PointId> points);

struct EvidenceRecord {
  AgentId agent;
  PointId point;
  bool label;

  bool operator==(const EvidenceRecord&) const = default;
};

// Observed (agent, point, label) history. Ownership and consistency are
// checked on construction; the induced version space is cached.
class Evidence {
 public:
  // Throws kInvalidArgument for unowned points, kInconsistentEvidence when no
  // hypothesis matches every record.
  Evidence(const Instance& instance, std::vector<EvidenceRecord> records);

  // Empty history.
  explicit Evidence(const Instance& instance);

  // Labels of `points` under row `h`. Each record is attributed to the
  // smallest-index owner among `allowed`.
  static Evidence labeled_by(const Instance& instance,
                             std::span<const PointId> points, HypothesisId h,
                             const AgentSet& allowed);

  // Labels of X_{-i} under row `h`.
  static Evidence outside_agent(const Instance& instance, AgentId agent,
                                HypothesisId h);

  const std::vector<EvidenceRecord>& records() const { return records_; }
  const VersionSpace& version_space() const { return version_space_; }
  bool covers(PointId point) const;

 private:
  std::vector<EvidenceRecord> records_;
  VersionSpace version_space_;
};

struct PosteriorPrior {
  Weights weights;       // zero off the support, sums to 1
  VersionSpace support;  // rows consistent with the evidence
};

PosteriorPrior posterior_given_evidence(const Instance& instance,
                                        const Evidence& evidence);

// Renormalizes the prior onto `vs` (which must be non-empty).
PosteriorPrior posterior_on(const Instance& instance, const VersionSpace& vs);

// Distinct restrictions to `points` of the rows consistent with `evidence`.
// With empty evidence this is H(X_i); with evidence on X_{-i} it is H(X_i|h).
std::set<Labeling> labelings_of(const Instance& instance,
                                std::span<const PointId> points,
                                const Evidence& evidence);

}  // namespace collab

#endif  // COLLAB_MODEL_HPP_
