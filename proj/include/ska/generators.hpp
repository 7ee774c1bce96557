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

#ifndef SKA_GENERATORS_HPP_
#define SKA_GENERATORS_HPP_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ska/rational.hpp"
#include "ska/source_model.hpp"
#include "ska/submodular_min.hpp"
#include "ska/subset.hpp"

// Random instance generators shared by the test suites and the CLI's batch
// mode. All draws come from a caller-owned std::mt19937_64, so a seed fixes
// the instance sequence.

namespace ska::gen {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Positive rational p/q with 1 <= p <= max_num, 1 <= q <= max_den.
inline Rational positive_rational(Rng& rng, int max_num, int max_den) {
  return Rational(uniform_int(rng, 1, max_num), uniform_int(rng, 1, max_den));
}

struct HypergraphParams {
  int min_users = 4;
  int max_users = 6;
  int max_edges = 8;
  int max_numerator = 6;
  int max_denominator = 6;
};

/// Hypergraphical source with 1..max_edges edges on uniformly random
/// nonempty member sets and rational weights.
inline HypergraphicalSource random_hypergraph(Rng& rng,
                                              const HypergraphParams& p = {}) {
  const int n = uniform_int(rng, p.min_users, p.max_users);
  const int m = uniform_int(rng, 1, p.max_edges);
  std::vector<WeightedEdge> edges;
  const auto full = static_cast<int>(Subset::full(n).bits());
  for (int e = 0; e < m; ++e) {
    const auto bits = static_cast<Subset::Bits>(uniform_int(rng, 1, full));
    edges.push_back(
        {Subset(bits),
         positive_rational(rng, p.max_numerator, p.max_denominator)});
  }
  return HypergraphicalSource(UserSet::numbered(n), std::move(edges));
}

/// Unit-weight PIN on a uniformly relabelled random recursive tree.
inline HypergraphicalSource random_tree(Rng& rng, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<WeightedEdge> edges;
  for (int v = 1; v < n; ++v) {
    const int parent = uniform_int(rng, 0, v - 1);
    edges.push_back(
        {Subset::singleton(perm[v]).with(perm[parent]), Rational(1)});
  }
  return HypergraphicalSource(UserSet::numbered(n), std::move(edges));
}

inline HypergraphicalSource complete_pin(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      edges.push_back({Subset::singleton(i).with(j), Rational(1)});
    }
  }
  return HypergraphicalSource(UserSet::numbered(n), std::move(edges));
}

inline HypergraphicalSource cycle_pin(int n) {
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({Subset::singleton(i).with((i + 1) % n), Rational(1)});
  }
  return HypergraphicalSource(UserSet::numbered(n), std::move(edges));
}

struct RandomSubmodular {
  SetFunctionOracle f;
  Rational rounding_unit;
  std::string kind;
};

namespace detail {

/// Signed modular weights with denominators <= 6.
inline std::vector<Rational> modular_term(Rng& rng, int n, int max_num) {
  std::vector<Rational> w(n);
  for (auto& x : w) {
    x = Rational(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, 6));
  }
  return w;
}

inline Rational modular_value(const std::vector<Rational>& w, Subset s) {
  Rational v;
  for (int i : s) v += w[i];
  return v;
}

}  // namespace detail

/// Weighted coverage function plus a signed modular term.
inline RandomSubmodular random_coverage_function(Rng& rng, int n) {
  const int items = uniform_int(rng, 1, 12);
  auto item_weight = std::make_shared<std::vector<Rational>>();
  for (int k = 0; k < items; ++k) {
    item_weight->push_back(positive_rational(rng, 6, 6));
  }
  auto covers = std::make_shared<std::vector<std::uint32_t>>(n);
  for (auto& c : *covers) {
    c = static_cast<std::uint32_t>(uniform_int(rng, 0, (1 << items) - 1));
  }
  auto linear = std::make_shared<std::vector<Rational>>(
      detail::modular_term(rng, n, 8));
  SetFunctionOracle f{n, [=](Subset s) {
                        std::uint32_t covered = 0;
                        for (int i : s) covered |= (*covers)[i];
                        Rational v = detail::modular_value(*linear, s);
                        for (int k = 0; k < items; ++k) {
                          if ((covered >> k) & 1U) v += (*item_weight)[k];
                        }
                        return v;
                      }};
  return {f, Rational(1, 60), "coverage"};
}

/// Scaled rank function of a truncated partition matroid plus a signed
/// modular term.
inline RandomSubmodular random_matroid_truncation(Rng& rng, int n) {
  const int groups = uniform_int(rng, 1, std::max(1, n / 2));
  auto group_of = std::make_shared<std::vector<int>>(n);
  for (auto& g : *group_of) g = uniform_int(rng, 0, groups - 1);
  auto capacity = std::make_shared<std::vector<int>>(groups);
  for (auto& c : *capacity) c = uniform_int(rng, 1, 3);
  const int truncation = uniform_int(rng, 1, n);
  const Rational scale = positive_rational(rng, 6, 6);
  auto linear = std::make_shared<std::vector<Rational>>(
      detail::modular_term(rng, n, 6));
  SetFunctionOracle f{n, [=](Subset s) {
                        std::vector<int> used(groups, 0);
                        for (int i : s) ++used[(*group_of)[i]];
                        int rank = 0;
                        for (int g = 0; g < groups; ++g) {
                          rank += std::min(used[g], (*capacity)[g]);
                        }
                        rank = std::min(rank, truncation);
                        return scale * Rational(rank) +
                               detail::modular_value(*linear, s);
                      }};
  return {f, Rational(1, 60), "matroid"};
}

/// Uniformly random lattice family lower ⊆ upper ⊆ {0..n-1}.
inline LatticeFamily random_family(Rng& rng, int n) {
  const auto full = static_cast<int>(Subset::full(n).bits());
  const Subset upper(static_cast<Subset::Bits>(uniform_int(rng, 0, full)));
  const Subset lower(static_cast<Subset::Bits>(uniform_int(rng, 0, full)) &
                     upper.bits());
  return {lower, upper};
}

}  // namespace ska::gen

#endif  // SKA_GENERATORS_HPP_
