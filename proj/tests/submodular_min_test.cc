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

#include "ska/submodular_min.hpp"

#include <numeric>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "ska/generators.hpp"
#include "ska/mmi.hpp"
#include "ska/structure.hpp"

namespace ska {
namespace {

using testing::users;

SetFunctionOracle modular(std::vector<Rational> w) {
  const int n = static_cast<int>(w.size());
  return {n, [w](Subset s) {
            Rational v;
            for (int i : s) v += w[i];
            return v;
          }};
}

SetFunctionOracle path_cut() {
  return {3, [](Subset s) {
            int cut = 0;
            for (int i = 0; i + 1 < 3; ++i) cut += s.contains(i) != s.contains(i + 1);
            return Rational(cut);
          }};
}

TEST(BruteForceTest, ModularPicksNegatives) {
  const auto f = modular({Rational(-1), Rational(2), Rational(-3)});
  const auto r = minimize_bruteforce(f, {Subset(), Subset::full(3)});
  EXPECT_EQ(r.value, Rational(-4));
  EXPECT_EQ(r.minimizer, users({1, 3}));
  EXPECT_EQ(r.minimizers.size(), 1u);
}

TEST(BruteForceTest, TreeGWithLowerBound) {
  const SourceModel tree = testing::tree_source();
  const auto g = build_g(tree, mmi(tree)).as_oracle();
  const auto r = minimize_bruteforce(g, {users({1}), users({1, 2, 3})});
  EXPECT_EQ(r.value, Rational(0));
  const std::vector<Subset> expected{users({1}), users({1, 2}),
                                     users({1, 2, 3})};
  EXPECT_EQ(r.minimizers, expected);
}

TEST(BruteForceTest, SingleFeasibleSet) {
  const auto f = modular({Rational(1), Rational(-2), Rational(5)});
  const auto r = minimize_bruteforce(f, {users({1, 2}), users({1, 2})});
  EXPECT_EQ(r.value, Rational(-1));
  EXPECT_EQ(r.minimizer, users({1, 2}));
}

TEST(BruteForceTest, RejectsBadFamilyAndCap) {
  const auto f = modular({Rational(1), Rational(1), Rational(1)});
  EXPECT_THROW(minimize_bruteforce(f, {users({1}), users({2})}), Error);
  EXPECT_THROW(minimize_bruteforce(f, {Subset(), Subset::full(3)}, 2),
               EnumerationLimitError);
}

TEST(MnpTest, ModularPicksNegatives) {
  const auto f = modular({Rational(-1), Rational(2), Rational(-3)});
  const auto r = minimize_mnp(f, {Subset(), Subset::full(3)}, Rational(1));
  EXPECT_EQ(r.value, Rational(-4));
  EXPECT_EQ(r.minimizer, users({1, 3}));
  EXPECT_FALSE(r.fallback);
}

TEST(MnpTest, PathCutMinimumIsZero) {
  const auto r = minimize_mnp(path_cut(), {Subset(), Subset::full(3)},
                              Rational(1));
  EXPECT_EQ(r.value, Rational(0));
  EXPECT_TRUE(r.minimizer.empty() || r.minimizer == Subset::full(3));
}

TEST(MnpTest, TreeGWithLowerBound) {
  const SourceModel tree = testing::tree_source();
  const ZssFunction g = build_g(tree, mmi(tree));
  const auto r = minimize_mnp(g.as_oracle(), {users({2}), users({2, 3, 4})},
                              g.rounding_unit());
  EXPECT_EQ(r.value, Rational(0));
}

TEST(MnpTest, SingleFeasibleSet) {
  const auto f = modular({Rational(1), Rational(-2), Rational(5)});
  const auto r = minimize_mnp(f, {users({2, 3}), users({2, 3})}, Rational(1));
  EXPECT_EQ(r.value, Rational(3));
  EXPECT_EQ(r.minimizer, users({2, 3}));
}

TEST(MnpTest, MatchesBruteForceOnRandomInstances) {
  gen::Rng rng(31);
  int fallbacks = 0;
  for (int t = 0; t < 120; ++t) {
    const int n = gen::uniform_int(rng, 1, 9);
    const auto inst = t % 2 == 0 ? gen::random_coverage_function(rng, n)
                                 : gen::random_matroid_truncation(rng, n);
    ASSERT_TRUE(is_submodular(inst.f));
    const LatticeFamily family = t % 3 == 0
                                     ? LatticeFamily{Subset(), Subset::full(n)}
                                     : gen::random_family(rng, n);
    const auto exact = minimize_bruteforce(inst.f, family);
    const auto r = minimize_mnp(inst.f, family, inst.rounding_unit);
    ASSERT_EQ(r.value, exact.value) << inst.kind << " n=" << n;
    ASSERT_EQ(inst.f(r.minimizer), exact.value);
    ASSERT_TRUE(family.upper.contains(r.minimizer));
    ASSERT_TRUE(r.minimizer.contains(family.lower));
    fallbacks += r.fallback;
  }
  RecordProperty("fallbacks", fallbacks);
}

TEST(ContractionTest, ShiftsByLowerValue) {
  gen::Rng rng(32);
  for (int t = 0; t < 20; ++t) {
    const int n = gen::uniform_int(rng, 2, 7);
    const auto inst = gen::random_coverage_function(rng, n);
    const LatticeFamily family = gen::random_family(rng, n);
    const Contraction c(inst.f, family);
    ASSERT_EQ(c.size(), family.free().size());
    ASSERT_EQ(c(Subset()), Rational(0));
    for_each_subset_of(Subset::full(c.size()), [&](Subset r) {
      const Subset b = c.expand(r);
      ASSERT_EQ(b - family.free(), family.lower);
      ASSERT_EQ(c(r) + c.base(), inst.f(b));
    });
  }
}

TEST(GreedyVertexTest, PrefixSumsMatchFunction) {
  gen::Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    const int n = gen::uniform_int(rng, 1, 8);
    const auto inst = gen::random_matroid_truncation(rng, n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto q = greedy_base_vertex(inst.f, order);
    Subset prefix;
    Rational sum;
    for (int i : order) {
      prefix = prefix.with(i);
      sum += q[i];
      ASSERT_EQ(sum, inst.f(prefix) - inst.f(Subset()));
    }
    // A base vertex lies in the base polyhedron: q(A) <= f(A) - f({}).
    for_each_subset_of(Subset::full(n), [&](Subset a) {
      Rational qa;
      for (int i : a) qa += q[i];
      ASSERT_LE(qa, inst.f(a) - inst.f(Subset()));
    });
  }
}

TEST(IsSubmodularTest, DetectsSupermodularFunction) {
  const SetFunctionOracle square{3, [](Subset s) {
                                   return Rational(s.size() * s.size());
                                 }};
  EXPECT_FALSE(is_submodular(square));
  EXPECT_TRUE(is_submodular(path_cut()));
}

}  // namespace
}  // namespace ska
