// Copyright 2026 The ska Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKA_MMI_HPP_
#define SKA_MMI_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ska/error.hpp"
#include "ska/partition.hpp"
#include "ska/rational.hpp"
#include "ska/source_model.hpp"

namespace ska {

/// Multivariate mutual information of a source together with the structure
/// of its minimizing partitions.
struct MmiResult {
  Rational gamma;                            // I(Z_V)
  std::vector<Partition> optimal_partitions;  // all minimizers, sorted
  Partition fundamental;                     // finest minimizer
  std::optional<Rational> gap;  // min excess of a non-optimal partition;
                                // nullopt when every partition is optimal
  int ell = 0;                  // number of blocks of `fundamental`

  bool is_optimal(const Partition& p) const {
    return std::binary_search(optimal_partitions.begin(),
                              optimal_partitions.end(), p);
  }

  friend bool operator==(const MmiResult&, const MmiResult&) = default;
};

namespace detail {

inline Rational partition_rate(std::span<const Rational> h,
                               std::span<const Subset> blocks, Subset ground) {
  Rational sum;
  for (Subset b : blocks) sum += h[b.bits()];
  return (sum - h[ground.bits()]) /
         Rational(static_cast<std::int64_t>(blocks.size()) - 1);
}

inline void check_cap(int n, int cap) {
  if (n > cap) {
    throw EnumerationLimitError(
        "enumeration limit: " + std::to_string(n) +
        " users exceed the cap of " + std::to_string(cap));
  }
}

}  // namespace detail

/// I_P(Z_V) = [sum_{C in P} H(Z_C) - H(Z_V)] / (|P| - 1).
inline Rational i_p(const SourceModel& source, const Partition& p) {
  if (p.ground_size() != source.size()) {
    throw Error("partition and source have different ground sets");
  }
  if (p.size() < 2) throw Error("I_P needs a partition with at least 2 blocks");
  Rational sum;
  for (Subset b : p.blocks()) sum += source.entropy(b);
  return (sum - source.entropy(source.users().all())) /
         Rational(p.size() - 1);
}

/// h_gamma(C) = H(Z_C) - gamma.
inline Rational residual_entropy(const SourceModel& source,
                                 const Rational& gamma, Subset c) {
  return source.entropy(c) - gamma;
}

/// Minimizes I_P over all partitions with two or more blocks by exhaustive
/// enumeration, collecting every minimizer and the gap to the runner-up.
inline MmiResult mmi(const SourceModel& source,
                     int cap = kDefaultEnumerationCap) {
  const int n = source.size();
  detail::check_cap(n, cap);
  const auto h = entropy_values(source);
  const Subset ground = Subset::full(n);

  std::optional<Rational> best;
  std::optional<Rational> second;
  std::vector<std::vector<Subset>> minimizers;
  for_each_partition(n, 2, [&](std::span<const Subset> blocks) {
    const Rational value = detail::partition_rate(h, blocks, ground);
    if (!best || value < *best) {
      if (best) second = *best;
      best = value;
      minimizers.clear();
      minimizers.emplace_back(blocks.begin(), blocks.end());
    } else if (value == *best) {
      minimizers.emplace_back(blocks.begin(), blocks.end());
    } else if (!second || value < *second) {
      second = value;
    }
  });

  MmiResult result;
  result.gamma = *best;
  for (auto& blocks : minimizers) {
    result.optimal_partitions.emplace_back(n, std::move(blocks));
  }
  std::sort(result.optimal_partitions.begin(), result.optimal_partitions.end());
  if (second) result.gap = *second - *best;

  Partition finest = result.optimal_partitions.front();
  for (const auto& p : result.optimal_partitions) finest = meet(finest, p);
  if (!result.is_optimal(finest)) {
    throw Error("internal: meet of optimal partitions is not optimal");
  }
  result.fundamental = finest;
  result.ell = finest.size();
  return result;
}

/// Self-check: the fundamental partition is optimal and refines every
/// optimal partition.
inline bool verify_fundamental(const MmiResult& result) {
  if (!result.is_optimal(result.fundamental)) return false;
  return std::all_of(
      result.optimal_partitions.begin(), result.optimal_partitions.end(),
      [&](const Partition& p) { return is_refinement(result.fundamental, p); });
}

}  // namespace ska

#endif  // SKA_MMI_HPP_
