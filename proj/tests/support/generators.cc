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

#include "generators.hpp"

#include <algorithm>
#include <set>

namespace collab::testing {

std::uint64_t SplitMix::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix::below(std::uint64_t n) {
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

InstanceData generate_data(std::uint64_t seed, const Limits& limits) {
  SplitMix rng(seed);
  InstanceData raw;
  const std::size_t m = rng.between(1, limits.max_points);
  const std::size_t cube = std::size_t{1} << m;
  const std::size_t rows_max = std::min(limits.max_rows, cube);
  const std::size_t rows =
      rng.between(std::min(limits.min_rows, rows_max), rows_max);

  std::set<std::uint64_t> seen;
  while (raw.hypotheses.size() < rows) {
    const std::uint64_t code = rng.below(cube);
    if (!seen.insert(code).second) continue;
    Labeling r(m, '0');
    for (std::size_t x = 0; x < m; ++x) {
      if ((code >> x) & 1U) r[x] = '1';
    }
    raw.hypotheses.push_back(r);
  }

  if (rng.chance(1, 2)) {
    raw.prior.assign(rows, Rational(1, static_cast<long>(rows)));
  } else {
    std::vector<long> w;
    long total = 0;
    for (std::size_t h = 0; h < rows; ++h) {
      w.push_back(static_cast<long>(rng.between(1, 9)));
      total += w.back();
    }
    for (long v : w) raw.prior.emplace_back(v, total);
  }

  const std::size_t k = rng.between(1, std::min(limits.max_agents, m));
  std::vector<std::set<PointId>> owned(k);
  for (PointId x = 0; x < m; ++x) {
    owned[rng.below(k)].insert(x);
    for (std::size_t a = 0; a < k; ++a) {
      if (rng.chance(1, 4)) owned[a].insert(x);
    }
  }
  for (auto& s : owned) {
    if (s.empty()) s.insert(rng.below(m));
  }
  for (const auto& s : owned) raw.agents.emplace_back(s.begin(), s.end());
  return raw;
}

Instance generate(std::uint64_t seed, const Limits& limits) {
  return validate_instance(generate_data(seed, limits));
}

std::vector<Instance> corpus(std::size_t count, std::uint64_t base_seed,
                             const Limits& limits) {
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(generate(base_seed + j, limits));
  return out;
}

}  // namespace collab::testing
