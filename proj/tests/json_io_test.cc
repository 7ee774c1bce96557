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

#include "ska/json_io.hpp"

#include <random>
#include <vector>

#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "ska/analysis.hpp"
#include "ska/generators.hpp"

namespace ska {
namespace {

using testing::users;

TEST(JsonRationalTest, RoundTripAndIntegers) {
  EXPECT_EQ(io::to_json(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(io::rational_from_json(io::to_json(Rational(5, 6))), Rational(5, 6));
  EXPECT_EQ(io::rational_from_json(nlohmann::json(7)), Rational(7));
  EXPECT_THROW(io::rational_from_json(nlohmann::json(0.5)), Error);
  EXPECT_THROW(io::rational_from_json(nlohmann::json("1/0")), Error);
}

TEST(JsonSubsetTest, KeysFollowUserOrder) {
  const UserSet u({"b", "a", "c"});
  EXPECT_EQ(io::subset_key(u, Subset::of({0, 2})), "b,c");
  EXPECT_EQ(io::subset_from_key(u, "c,b"), Subset::of({0, 2}));
  EXPECT_EQ(io::subset_from_key(u, ""), Subset());
  EXPECT_THROW(io::subset_from_key(u, "a,a"), Error);
  EXPECT_THROW(io::subset_from_key(u, "d"), Error);
}

TEST(JsonSourceTest, TableWithInferredUsers) {
  const SourceModel s = io::parse_source(R"({"model": "table", "entropy": {
      "1": "1", "2": "1", "10": "0",
      "1,2": "1", "1,10": "1", "2,10": "1", "1,2,10": "1"}})");
  EXPECT_EQ(s.users().labels(), (std::vector<std::string>{"1", "2", "10"}));
  EXPECT_EQ(s.entropy({"1", "10"}), Rational(1));
}

TEST(JsonSourceTest, MalformedDocumentsAreErrors) {
  EXPECT_THROW(io::parse_source("{"), Error);
  EXPECT_THROW(io::parse_source(R"({"model": "graph"})"), Error);
  EXPECT_THROW(io::parse_source(R"({"model": "hypergraph", "users": ["1", "2"]})"),
               Error);
  EXPECT_THROW(io::parse_source(R"({"model": "table", "users": ["1", "2"],
      "entropy": {"1": "1", "2": "1"}})"),
               Error);
  EXPECT_THROW(io::parse_source(R"({"model": "hypergraph", "users": ["1", "2"],
      "edges": [{"members": ["1", "3"], "weight": "1"}]})"),
               Error);
  EXPECT_THROW(io::parse_source(R"({"model": "hypergraph", "users": 3,
      "edges": []})"),
               Error);
}

TEST(JsonSourceTest, SourcesRoundTrip) {
  gen::Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const SourceModel hg = gen::random_hypergraph(rng);
    for (const SourceModel& s : {hg, SourceModel(to_table(hg))}) {
      const SourceModel back = io::parse_source(io::to_json(s).dump());
      ASSERT_EQ(back.is_hypergraphical(), s.is_hypergraphical());
      ASSERT_EQ(back.users().labels(), s.users().labels());
      ASSERT_EQ(entropy_values(back), entropy_values(s));
    }
  }
}

TEST(JsonReportTest, ReportsRoundTrip) {
  gen::Rng rng(62);
  for (int t = 0; t < 20; ++t) {
    const SourceModel s = gen::random_hypergraph(rng);
    const UserSet& u = s.users();
    const MmiResult r = mmi(s);
    ASSERT_EQ(io::mmi_from_json(u, io::to_json(u, r)), r);
    const TMaxReport tm = t_max(s, r);
    ASSERT_EQ(io::tmax_from_json(u, io::to_json(u, tm)), tm);
    const CriticalEdgeReport ce = critical_edges(s, tm);
    ASSERT_EQ(io::critical_from_json(u, io::to_json(u, ce)), ce);
    const GrowthCurve gc = growth_curve(s, r, s.size());
    ASSERT_EQ(io::growth_from_json(u, io::to_json(u, gc)), gc);
    const ConjectureReport cr = conjecture_check(s, r);
    ASSERT_EQ(io::conjecture_from_json(u, io::to_json(u, cr)), cr);
    const PerturbationVerdict v = perturbation_verify(
        s, r, Subset::of({0, 1}), PerturbationMode::kIncrement);
    ASSERT_EQ(io::verdict_from_json(u, io::to_json(u, v)), v);
  }
}

TEST(JsonReportTest, InfiniteGapIsMarked) {
  const HypergraphicalSource two(UserSet::numbered(2),
                                 {{users({1, 2}), Rational(1)}});
  const MmiResult r = mmi(two);
  const auto j = io::to_json(two.users(), r);
  EXPECT_EQ(j.at("gap"), "inf");
  EXPECT_EQ(io::mmi_from_json(two.users(), j), r);
}

}  // namespace
}  // namespace ska
