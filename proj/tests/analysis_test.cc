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

#include "ska/analysis.hpp"

#include <random>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "oracles.hpp"
#include "ska/generators.hpp"

namespace ska {
namespace {

using testing::users;

TEST(GrowthTest, TreeExamples) {
  const SourceModel tree = testing::tree_source();
  const MmiResult r = mmi(tree);
  EXPECT_EQ(growth_rate(tree, r, users({1, 4})), Rational(1, 3));
  EXPECT_EQ(growth_rate(tree, r, users({2})), Rational(0));
  EXPECT_EQ(growth_rate(tree, r, users({1, 2, 3, 4})), Rational(1));
  EXPECT_EQ(growth_rate(tree, r, Subset()), Rational(0));
  EXPECT_THROW(growth_rate(tree, r, Subset::singleton(6)), Error);
}

TEST(GrowthTest, TreeCurve) {
  const SourceModel tree = testing::tree_source();
  const GrowthCurve c = growth_curve(tree, mmi(tree), 4);
  const std::vector<Rational> expected{Rational(0), Rational(0), Rational(1, 3),
                                       Rational(1, 2), Rational(1)};
  EXPECT_EQ(c.values, expected);
  EXPECT_EQ(c.witnesses[2], users({1, 4}));
  EXPECT_FALSE(c.unique_shortcut_checked);
}

TEST(GrowthTest, PatchFirstSourceCurveUsesShortcut) {
  const SourceModel s = testing::patch_unique_source();
  const GrowthCurve c = growth_curve(s, mmi(s), 2);
  EXPECT_EQ(c.values[1], Rational(0));
  EXPECT_EQ(c.values[2], Rational(1));
  EXPECT_TRUE(c.unique_shortcut_checked);
  EXPECT_THROW(growth_curve(s, mmi(s), 4), Error);
}

TEST(CriticalTest, WorkedExamples) {
  const std::vector<Subset> patch{users({1, 3}), users({2, 3})};
  const SourceModel first = testing::patch_unique_source();
  const SourceModel second = testing::patch_nonunique_source();
  const SourceModel tree = testing::tree_source();
  EXPECT_EQ(critical_edges(first, mmi(first)).edges, patch);
  EXPECT_EQ(critical_edges(second, mmi(second)).edges, patch);
  const auto t = critical_edges(tree, mmi(tree));
  EXPECT_EQ(t.edges, std::vector<Subset>{users({1, 4})});
  EXPECT_EQ(t.tcase, TCase::kT2);
  EXPECT_EQ(t.common_size, 2);
}

TEST(CriticalTest, GreedyExamples) {
  const SourceModel tree = testing::tree_source();
  const SourceModel first = testing::patch_unique_source();
  EXPECT_EQ(greedy_critical_edge(tree, mmi(tree)), users({1, 4}));
  EXPECT_EQ(greedy_critical_edge(first, mmi(first)), users({2, 3}));
  const HypergraphicalSource two(UserSet::numbered(2),
                                 {{users({1, 2}), Rational(1)}});
  EXPECT_EQ(greedy_critical_edge(two, mmi(two)), users({1, 2}));
}

TEST(LossTest, MotivationExamples) {
  const SourceModel s = testing::motivation_source();
  const MmiResult r = mmi(s);
  EXPECT_EQ(loss_rate(s, r, users({1, 2})), Rational(0));
  EXPECT_EQ(loss_rate(s, r, users({1, 2, 3})), Rational(1));
  EXPECT_TRUE(is_excess(s, r, users({1, 2})));
  EXPECT_FALSE(is_excess(s, r, users({1, 2, 3})));
  EXPECT_THROW(loss_rate(s, r, users({1, 3})), Error);
  EXPECT_THROW(is_excess(to_table(s), r, users({1, 2})), Error);
}

TEST(LossTest, TreeEdgesAreNotExcess) {
  const SourceModel tree = testing::tree_source();
  const MmiResult r = mmi(tree);
  for (int i = 1; i < 4; ++i) {
    EXPECT_FALSE(is_excess(tree, r, users({i, i + 1})));
  }
}

TEST(PerturbationTest, MotivationIncrementAndDecrement) {
  const SourceModel s = testing::motivation_source();
  const MmiResult r = mmi(s);
  const auto up = perturbation_verify(s, r, users({2, 3}),
                                      PerturbationMode::kIncrement,
                                      kDefaultEnumerationCap, Rational(1));
  EXPECT_EQ(up.formula, Rational(1));
  EXPECT_EQ(up.mmi_after, Rational(2));
  EXPECT_TRUE(up.ok());
  const auto down = perturbation_verify(s, r, users({1, 2}),
                                        PerturbationMode::kDecrement);
  EXPECT_EQ(down.formula, Rational(0));
  EXPECT_EQ(down.mmi_after, Rational(1));
  EXPECT_TRUE(down.ok());
}

TEST(PerturbationTest, TreeLeafPair) {
  const SourceModel tree = testing::tree_source();
  const auto v = perturbation_verify(tree, mmi(tree), users({1, 4}),
                                     PerturbationMode::kIncrement);
  EXPECT_EQ(v.eps, Rational(1, 4));
  EXPECT_EQ(v.quotient, Rational(1, 3));
  EXPECT_TRUE(v.ok());
  ASSERT_TRUE(v.granular_eps.has_value());
  EXPECT_EQ(*v.granular_eps, Rational(1, 6));
  EXPECT_TRUE(*v.granular_ok);
}

TEST(PerturbationTest, WrongFormulaIsReportedNotHidden) {
  const SourceModel tree = testing::tree_source();
  MmiResult wrong = mmi(tree);
  // Pretend only the singletons are optimal: the formula then predicts 1/3
  // for {1, 2}, but the true rate is 0.
  wrong.optimal_partitions = {Partition::singletons(4)};
  const auto v = perturbation_verify(tree, wrong, users({1, 2}),
                                     PerturbationMode::kIncrement);
  EXPECT_FALSE(v.rate_ok);
  EXPECT_FALSE(v.ok());
  EXPECT_NE(v.quotient, v.formula);
}

TEST(ConjectureTest, Examples) {
  const SourceModel tree = testing::tree_source();
  const auto t = conjecture_check(tree, mmi(tree));
  ASSERT_EQ(t.entries.size(), 1u);
  EXPECT_EQ(t.entries[0].rate, Rational(1, 3));
  EXPECT_TRUE(t.all_hold());
  const SourceModel first = testing::patch_unique_source();
  const auto f = conjecture_check(first, mmi(first));
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[0].rate, Rational(1));
  EXPECT_TRUE(f.all_hold());
  ConjectureTally tally;
  accumulate(tally, t);
  accumulate(tally, f);
  EXPECT_EQ(tally.instances, 2);
  EXPECT_EQ(tally.edges, 3);
  EXPECT_EQ(tally.holds, 3);
}

class RandomAnalysisTest : public ::testing::Test {
 protected:
  void SetUp() override {
    gen::Rng rng(51);
    for (int t = 0; t < 25; ++t) sources_.push_back(gen::random_hypergraph(rng));
  }
  std::vector<SourceModel> sources_;
};

TEST_F(RandomAnalysisTest, IncrementIdentityForEverySubset) {
  for (const auto& s : sources_) {
    const MmiResult r = mmi(s);
    for_each_subset_of(s.users().all(), [&](Subset set) {
      const auto v =
          perturbation_verify(s, r, set, PerturbationMode::kIncrement);
      ASSERT_TRUE(v.ok()) << v.quotient.str() << " vs " << v.formula.str();
    });
  }
}

TEST_F(RandomAnalysisTest, DecrementIdentityForEveryEdge) {
  for (const auto& s : sources_) {
    const MmiResult r = mmi(s);
    for (const auto& e : s.hypergraph().edges()) {
      const auto v =
          perturbation_verify(s, r, e.members, PerturbationMode::kDecrement);
      ASSERT_TRUE(v.ok()) << v.quotient.str() << " vs " << v.formula.str();
    }
  }
}

TEST_F(RandomAnalysisTest, RatesAreOrderedAndMonotone) {
  for (const auto& s : sources_) {
    const MmiResult r = mmi(s);
    const int n = s.size();
    for (const auto& e : s.hypergraph().edges()) {
      ASSERT_LE(growth_rate(r, e.members), loss_rate(s, r, e.members));
      ASSERT_EQ(is_excess(s, r, e.members),
                loss_rate(s, r, e.members).is_zero());
    }
    for_each_subset_of(Subset::full(n), [&](Subset a) {
      const Rational ra = growth_rate(r, a);
      ASSERT_GE(ra.sign(), 0);
      ASSERT_LE(ra, Rational(1));
      if (a.size() <= 1) {
        ASSERT_TRUE(ra.is_zero());
      }
      for (int i = 0; i < n; ++i) ASSERT_LE(ra, growth_rate(r, a.with(i)));
    });
    ASSERT_EQ(growth_rate(r, Subset::full(n)), Rational(1));
  }
}

TEST_F(RandomAnalysisTest, CriticalEdgesMatchDefinition) {
  for (const auto& s : sources_) {
    const MmiResult r = mmi(s);
    const auto report = critical_edges(s, r);
    ASSERT_EQ(report.edges, critical_edges_bruteforce(r, s.size()));
    std::vector<oracle::Blocks> optimal;
    for (const auto& p : r.optimal_partitions) optimal.push_back(p.blocks());
    ASSERT_EQ(report.edges, oracle::minimal_crossing_sets(optimal, s.size()));
    for (Subset e : report.edges) ASSERT_EQ(e.size(), report.common_size);
    const Subset g = greedy_critical_edge(s, r);
    ASSERT_NE(std::find(report.edges.begin(), report.edges.end(), g),
              report.edges.end());
  }
}

TEST_F(RandomAnalysisTest, ExcessEdgesAreStable) {
  for (const auto& s : sources_) {
    const MmiResult r = mmi(s);
    const Rational eps = r.gap ? *r.gap / Rational(2) : Rational(1);
    for (const auto& e : s.hypergraph().edges()) {
      const Rational d = std::min(eps, has_edge(s.hypergraph(), e.members));
      const MmiResult after = mmi(decrement(s, e.members, d));
      if (is_excess(s, r, e.members)) {
        ASSERT_EQ(after.gamma, r.gamma);
      } else {
        ASSERT_LT(after.gamma, r.gamma);
      }
    }
  }
}

TEST(TreeLeavesTest, UniqueCriticalEdgeIsLeafSet) {
  gen::Rng rng(52);
  for (int n = 3; n <= 8; ++n) {
    const auto tree = gen::random_tree(rng, n);
    const MmiResult r = mmi(tree);
    Subset leaves;
    for (int i = 0; i < n; ++i) {
      int degree = 0;
      for (const auto& e : tree.edges()) degree += e.members.contains(i);
      if (degree == 1) leaves = leaves.with(i);
    }
    const auto report = critical_edges(tree, r);
    ASSERT_EQ(report.edges, std::vector<Subset>{leaves}) << n;
  }
}

}  // namespace
}  // namespace ska
