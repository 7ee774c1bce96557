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

#ifndef SKA_TESTS_FIXTURES_HPP_
#define SKA_TESTS_FIXTURES_HPP_

#include <vector>

#include "ska/partition.hpp"
#include "ska/source_model.hpp"

namespace ska::testing {

/// Z1 = (Xa, Xb), Z2 = (Xa, Xb), Z3 = Xa with independent bits Xa, Xb.
inline HypergraphicalSource motivation_source() {
  return HypergraphicalSource(UserSet::numbered(3),
                              {{Subset::of({0, 1, 2}), Rational(1)},
                               {Subset::of({0, 1}), Rational(1)}});
}

/// Z1 = Z2 one uniform bit, Z3 constant.
inline HypergraphicalSource patch_unique_source() {
  return HypergraphicalSource(UserSet::numbered(3),
                              {{Subset::of({0, 1}), Rational(1)}});
}

/// Z1 = (Xa, Xb, Xc), Z2 = (Xa, Xb, Xd), Z3 = (Xc, Xd).
inline HypergraphicalSource patch_nonunique_source() {
  return HypergraphicalSource(UserSet::numbered(3),
                              {{Subset::of({0, 1}), Rational(1)},
                               {Subset::of({0, 1}), Rational(1)},
                               {Subset::of({0, 2}), Rational(1)},
                               {Subset::of({1, 2}), Rational(1)}});
}

/// Path PIN 1 - 2 - 3 - 4 with unit weights.
inline HypergraphicalSource tree_source() {
  return pin_source(UserSet::numbered(4), {{"1", "2", Rational(1)},
                                           {"2", "3", Rational(1)},
                                           {"3", "4", Rational(1)}});
}

inline Partition parts(int n, std::vector<std::vector<int>> blocks) {
  std::vector<Subset> out;
  for (const auto& b : blocks) {
    Subset s;
    for (int i : b) s = s.with(i - 1);
    out.push_back(s);
  }
  return Partition(n, out);
}

/// {i, j, ...} written with 1-based user numbers.
inline Subset users(std::initializer_list<int> one_based) {
  Subset s;
  for (int i : one_based) s = s.with(i - 1);
  return s;
}

}  // namespace ska::testing

#endif  // SKA_TESTS_FIXTURES_HPP_
