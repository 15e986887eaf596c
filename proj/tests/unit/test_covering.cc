// Copyright 2026 The Solyanik Authors.
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

#include <gtest/gtest.h>

#include <random>

#include "../oracles.h"
#include "solyanik/covering.h"
#include "solyanik/maximal.h"
#include "solyanik/weights.h"

namespace solyanik {
namespace {

std::vector<GridBox> fixture(const Grid& g) {
  return {GridBox::make(g, {0, 0}, {2, 2}), GridBox::make(g, {1, 1}, {3, 3}),
          GridBox::make(g, {0, 0}, {3, 3})};
}

TEST(CfSelect, HandTracedFixture) {
  Grid g({3, 3});
  auto w = Weights::constant(g, 1.0);
  auto rects = fixture(g);
  auto r = cf_select(rects, w, 0.5);
  ASSERT_EQ(r.selected.size(), 2u);
  EXPECT_EQ(r.selected[0], rects[0]);
  EXPECT_EQ(r.selected[1], rects[1]);
  ASSERT_EQ(r.rejected.size(), 1u);
  EXPECT_EQ(r.rejected[0], rects[2]);
  EXPECT_EQ(r.rejected_index, (std::vector<std::size_t>{2}));
  EXPECT_EQ(r.increments[0].size(), 4);
  EXPECT_EQ(r.increments[1].size(), 3);
  EXPECT_EQ(r.selected_union.size(), 7);

  auto inc = verify_inclusion(r);
  EXPECT_TRUE(inc.holds);
  // Cell (0,2) is reached through rows {0,1} x cols {1,2}: 3/4 > 1/2.
  auto level = covering_level_set(r.selected_union, 0.5);
  EXPECT_TRUE(level.contains(g.index({0, 2, 0})));

  auto sp = verify_sparsity(r, w, 1.0);
  EXPECT_EQ(sp.sum_selected_weight, 8.0);
  EXPECT_EQ(sp.union_weight, 7.0);
  EXPECT_EQ(sp.bound, 14.0);
  EXPECT_TRUE(sp.holds);

  auto ret = verify_mass_retention(r, w, certified_exponent(w), 2);
  EXPECT_FALSE(ret.in_range);
  EXPECT_NEAR(ret.ratio, 9.0 / 7.0, 1e-15);
}

TEST(CfSelect, TrivialCases) {
  Grid g({4, 4});
  auto one = GridBox::make(g, {1, 1}, {3, 4});
  auto r = cf_select({one}, g, 0.3);
  EXPECT_EQ(r.selected, std::vector<GridBox>{one});
  EXPECT_TRUE(verify_inclusion(r).holds);
  for (double d : {1e-9, 0.5, 0.999}) {
    auto dup = cf_select({one, one}, g, d);
    EXPECT_EQ(dup.selected.size(), 1u);
    EXPECT_EQ(dup.rejected.size(), 1u);
  }
  // Each box adds a fresh cell, so a tiny delta keeps all of them.
  std::vector<GridBox> stair;
  for (int k = 1; k <= 4; ++k) stair.push_back(GridBox::make(g, {0, 0}, {k, k}));
  EXPECT_EQ(cf_select(stair, g, 0.01).selected.size(), 4u);
  // Disjoint boxes: sparsity is an equality of sums.
  auto w = generate_weight(CheckerboardSpec{3}, g);
  auto disj = cf_select({GridBox::make(g, {0, 0}, {2, 2}), GridBox::make(g, {2, 2}, {4, 4})}, w, 0.5);
  auto sp = verify_sparsity(disj, w, 2.0);
  EXPECT_DOUBLE_EQ(sp.sum_selected_weight, sp.union_weight);
  auto all = verify_mass_retention(disj, w, 64.0, 2);
  EXPECT_DOUBLE_EQ(all.ratio, 1.0);
  if (all.in_range) EXPECT_TRUE(all.holds);
}

TEST(CfSelect, TieIsSelected) {
  Grid g({1, 4});
  auto a = GridBox::make(g, {0, 0}, {1, 2});
  auto b = GridBox::make(g, {0, 1}, {1, 3});  // overlap exactly half
  EXPECT_EQ(cf_select({a, b}, g, 0.5).selected.size(), 2u);
  EXPECT_EQ(cf_select({a, b}, g, 0.5000001).selected.size(), 1u);
  // 0.3 is not a dyadic rational; |R| = 10, fresh = 3 must tie exactly.
  Grid h({1, 10});
  auto c = GridBox::make(h, {0, 0}, {1, 7});
  auto d = GridBox::make(h, {0, 0}, {1, 10});
  EXPECT_EQ(cf_select({c, d}, h, 0.3).selected.size(), 2u);
}

TEST(CfSelect, Errors) {
  Grid g({3});
  EXPECT_THROW(cf_select({}, g, 0.5), std::invalid_argument);
  EXPECT_THROW(cf_select({GridBox::interval(0, 2)}, g, 0.0), std::invalid_argument);
  EXPECT_THROW(cf_select({GridBox::interval(0, 2)}, g, 1.0), std::invalid_argument);
  EXPECT_THROW(cf_select({GridBox::interval(0, 4)}, g, 0.5), std::invalid_argument);
}

TEST(CfSelect, InvariantsOnRandomFamilies) {
  std::mt19937_64 rng(91);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Grid g({12, 10});
    auto rects = random_rect_family(g, 30, 6, seed);
    for (double d : {0.5, 0.2, 0.05}) {
      auto r = cf_select(rects, g, d);
      CellSet u(g), seen(g);
      for (std::size_t k = 0; k < r.selected.size(); ++k) {
        const auto& inc = r.increments[k];
        EXPECT_GE(static_cast<double>(inc.size()), d * r.selected[k].volume() - 1e-12);
        for (auto c : inc.members()) {
          EXPECT_FALSE(seen.contains(c));
          seen.insert(c);
        }
        u |= CellSet::from_box(g, r.selected[k]);
      }
      EXPECT_EQ(u, seen);
      EXPECT_EQ(u, r.selected_union);
      EXPECT_EQ(r.selected.size() + r.rejected.size(), rects.size());
      // Rejected boxes overlap the union of earlier selections by more than
      // (1 - delta)|R|.
      for (std::size_t i = 0; i < r.rejected.size(); ++i) {
        CellSet before(g);
        for (std::size_t k = 0; k < r.selected.size(); ++k)
          if (r.selected_index[k] < r.rejected_index[i])
            before |= CellSet::from_box(g, r.selected[k]);
        std::int64_t overlap = 0;
        for_each_cell(g, r.rejected[i], [&](std::int64_t c) { overlap += before.contains(c); });
        EXPECT_GT(static_cast<double>(overlap), (1 - d) * r.rejected[i].volume() - 1e-9);
      }
      EXPECT_TRUE(verify_inclusion(r).holds);
      // Independent check against the generic level set.
      if (!r.rejected.empty()) {
        auto lvl = strong_level_set<Rational>(r.selected_union, Rational(1) - to_rational(d));
        EXPECT_EQ(lvl, covering_level_set(r.selected_union, d));
      }
      auto w = oracle::random_weight(g, rng);
      for (double p : {1.0, 2.0}) EXPECT_TRUE(verify_sparsity(r, w, p).holds);
    }
  }
}

TEST(CfSelect, OrderSensitivityKeepsGuarantees) {
  Grid g({10, 10});
  auto rects = random_rect_family(g, 25, 6, 3);
  auto w = generate_weight(CheckerboardSpec{4}, g);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    std::shuffle(rects.begin(), rects.end(), rng);
    auto r = cf_select(rects, w, 0.3);
    EXPECT_TRUE(verify_inclusion(r).holds);
    EXPECT_TRUE(verify_sparsity(r, w, 1.0).holds);
    EXPECT_TRUE(verify_sparsity(r, w, 2.0).holds);
  }
}

TEST(Rects, JsonRoundTrip) {
  Grid g({3, 3});
  auto rects = fixture(g);
  auto j = rects_to_json(rects, 2);
  EXPECT_EQ(j.dump(), "[[[0,2],[0,2]],[[1,3],[1,3]],[[0,3],[0,3]]]");
  EXPECT_EQ(rects_from_json(j, g), rects);
  EXPECT_THROW(rects_from_json(nlohmann::json::parse("[[[0,4],[0,1]]]"), g),
               std::invalid_argument);
  EXPECT_THROW(rects_from_json(nlohmann::json::parse("[[[0,1]]]"), g), std::invalid_argument);
}

}  // namespace
}  // namespace solyanik
