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
#include "solyanik/maximal.h"

namespace solyanik {
namespace {

CellSet cells(const Grid& g, std::vector<std::int64_t> idx) {
  return CellSet::from_indices(g, idx);
}

TEST(BoxAverage, Examples) {
  Grid g({3, 2});
  auto c = ScalarField<double>::constant(g, 2.5);
  EXPECT_EQ(box_average(c, GridBox::make(g, {1, 0}, {3, 2})), 2.5);
  Grid g22({2, 2});
  auto f = ScalarField<double>::indicator(CellSet::from_coords(g22, {{0, 0, 0}, {1, 1, 0}}));
  EXPECT_EQ(box_average(f, GridBox::make(g22, {0, 0}, {2, 2})), 0.5);
  Grid g2({2});
  ScalarField<double> h(g2, FlatArray<double>{{1.0, 4.0}});
  EXPECT_EQ(box_average(h, GridBox::interval(0, 2)), 2.5);
}

TEST(DirectionalMax, Examples) {
  Grid g({4});
  auto f = ScalarField<Rational>::indicator(cells(g, {1, 2}));
  auto m = directional_max(f, 0);
  EXPECT_EQ(m[0], Rational(2, 3));
  EXPECT_EQ(m[3], Rational(2, 3));
  EXPECT_EQ(m[1], Rational(1));

  Grid g22({2, 2});
  auto d = ScalarField<Rational>::indicator(CellSet::from_coords(g22, {{0, 0, 0}, {1, 1, 0}}));
  EXPECT_EQ(directional_max(d, 0)[g22.index({1, 0, 0})], Rational(1, 2));

  auto c = ScalarField<double>::constant(Grid({3, 3}), 1.75);
  auto mc = directional_max(c, 1);
  for (std::int64_t i = 0; i < 9; ++i) EXPECT_EQ(mc[i], 1.75);
}

TEST(DirectionalMax, MatchesOracle) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> side(1, 5);
    Grid g({side(rng), side(rng), side(rng)});
    auto e = oracle::random_set(g, rng, 0.5);
    auto f = ScalarField<Rational>::indicator(e);
    for (int axis = 0; axis < 3; ++axis) {
      auto m = directional_max(f, axis);
      auto ref = oracle::directional_field<Rational>(g, f.values(), axis);
      for (std::int64_t i = 0; i < g.cell_count(); ++i) ASSERT_EQ(m[i], ref[i]);
    }
  }
}

TEST(ComposedMax, Examples) {
  std::mt19937_64 rng(4);
  Grid g({4, 3});
  auto e = oracle::random_set(g, rng, 0.3);
  auto f = ScalarField<Rational>::indicator(e);
  auto single = composed_max(f, {0});
  auto direct = directional_max(f, 0);
  for (std::int64_t i = 0; i < g.cell_count(); ++i) EXPECT_EQ(single[i], direct[i]);
  // Rightmost axis is applied first.
  auto two = composed_max(f, {0, 1});
  auto manual = directional_max(directional_max(f, 1), 0);
  for (std::int64_t i = 0; i < g.cell_count(); ++i) EXPECT_EQ(two[i], manual[i]);
  auto ones = composed_max(ScalarField<double>::constant(g, 1.0), {1, 0, 1});
  for (std::int64_t i = 0; i < g.cell_count(); ++i) EXPECT_EQ(ones[i], 1.0);
  EXPECT_THROW(composed_max(f, std::span<const int>{}), std::invalid_argument);
}

TEST(StrongLevelSet, Examples) {
  Grid g({4});
  auto e = cells(g, {1, 2});
  EXPECT_EQ(strong_level_set(e, 0.6), CellSet::full(g));
  EXPECT_EQ(strong_level_set(e, 0.7), e);
  EXPECT_EQ(strong_level_set<Rational>(e, to_rational(0.6)), CellSet::full(g));
  Grid g33({3, 3});
  EXPECT_EQ(strong_level_set(CellSet::full(g33), 0.99), CellSet::full(g33));
  EXPECT_THROW(strong_level_set(CellSet(g), 0.5), std::invalid_argument);
}

TEST(StrongLevelSet, MatchesOracleExactly) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<int> side(1, 4);
    Grid g({side(rng), side(rng), side(rng)});
    auto e = oracle::random_set(g, rng, 0.5);
    Rational alpha = to_rational(std::uniform_real_distribution<double>(0.05, 0.95)(rng));
    auto ref = oracle::above(g, oracle::max_field<Rational>(g, oracle::indicator<Rational>(e),
                                                            nullptr),
                             alpha);
    EXPECT_EQ(strong_level_set<Rational>(e, alpha), ref);
  }
}

TEST(PerturbedLevelSet, Examples) {
  Grid g({4});
  auto e = cells(g, {1, 2});
  for (double a : {0.3, 0.6, 0.7, 0.9})
    EXPECT_EQ(perturbed_level_set_1d<double>({e, 0.0}, a), strong_level_set(e, a));
  EXPECT_EQ(perturbed_level_set_1d<double>({e, 0.3}, 0.75), CellSet::full(g));
  EXPECT_EQ(perturbed_level_set_1d<double>({CellSet::full(g), 0.3}, 0.9), CellSet::full(g));
  EXPECT_THROW(perturbed_level_set_1d<double>({e, 0.5}, 0.5), std::invalid_argument);
  EXPECT_THROW(perturbed_level_set_1d<double>({CellSet(Grid({2, 2})), 0.0}, 0.5),
               std::invalid_argument);
}

TEST(WeightedStrongLevelSet, Examples) {
  Grid g({2});
  auto w = Weights::from_vector(g, {1, 4});
  EXPECT_EQ(weighted_strong_level_set(cells(g, {1}), w, 0.7), CellSet::full(g));
  Grid g34({3, 4});
  auto one = Weights::constant(g34, 1.0);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    auto e = oracle::random_set(g34, rng, 0.4);
    EXPECT_EQ(weighted_strong_level_set(e, one, 0.6), strong_level_set(e, 0.6));
  }
  EXPECT_EQ(weighted_strong_level_set(CellSet::full(g34), one, 0.9), CellSet::full(g34));
}

TEST(WeightedStrongLevelSet, MatchesOracleExactly) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<int> side(1, 4);
    Grid g({side(rng), side(rng)});
    auto w = oracle::random_weight(g, rng).cast<Rational>();
    auto e = oracle::random_set(g, rng, 0.5);
    Rational alpha = to_rational(std::uniform_real_distribution<double>(0.05, 0.95)(rng));
    FlatArray<Rational> num(g.cell_count());
    for (std::int64_t i = 0; i < num.size(); ++i) num[i] = e.contains(i) ? w[i] : Rational(0);
    auto ref = oracle::above(g, oracle::max_field<Rational>(g, num, &w.values()), alpha);
    EXPECT_EQ(weighted_strong_level_set<Rational>(e, w, alpha), ref);
  }
}

TEST(PointMassLevelSet, Examples) {
  PointMassMeasure unit({{{0.0}, 1.0}, {{1.0}, 1.0}, {{2.0}, 1.0}, {{3.0}, 1.0}});
  std::vector<bool> in_e = {false, true, true, false};
  auto r = point_mass_max_level_set_1d(unit, in_e, 0.0, 0.6);
  EXPECT_EQ(r, std::vector<bool>(4, true));
  r = point_mass_max_level_set_1d(unit, in_e, 0.0, 0.7);
  EXPECT_EQ(r, in_e);
  EXPECT_EQ(point_mass_max_level_set_1d(unit, std::vector<bool>(4, true), 0.0, 0.9),
            std::vector<bool>(4, true));

  PointMassMeasure mu({{{0.0}, 1.0}, {{1.0}, 0.1}});
  EXPECT_EQ(point_mass_max_level_set_1d(mu, {true, false}, 0.0, 0.9),
            (std::vector<bool>{true, true}));
  EXPECT_EQ(point_mass_max_level_set_1d(mu, {false, false}, 0.0, 0.9),
            (std::vector<bool>{false, false}));
  EXPECT_THROW(point_mass_max_level_set_1d(mu, {true, false}, 0.9, 0.9),
               std::invalid_argument);
}

TEST(MaximalProperties, MonotoneInSetAndThreshold) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    Grid g({5, 4});
    auto a = oracle::random_set(g, rng, 0.3);
    auto b = a;
    b |= oracle::random_set(g, rng, 0.2);
    for (double alpha : {0.2, 0.5, 0.8}) {
      EXPECT_TRUE(strong_level_set(a, alpha).subset_of(strong_level_set(b, alpha)));
      EXPECT_TRUE(strong_level_set(a, alpha + 0.1).subset_of(strong_level_set(a, alpha)));
      EXPECT_TRUE(a.subset_of(strong_level_set(a, alpha)));
    }
  }
}

TEST(MaximalProperties, StrongBelowComposedPointwise) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    Grid g({4, 5});
    auto f = ScalarField<Rational>::indicator(oracle::random_set(g, rng, 0.4));
    auto ms = strong_max_field(f);
    auto m01 = composed_max(f, {0, 1});
    auto m10 = composed_max(f, {1, 0});
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
      EXPECT_LE(ms[i], m01[i]);
      EXPECT_LE(ms[i], m10[i]);
    }
  }
}

TEST(IntervalMax, WeightedMatchesOracle) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    Grid g({std::uniform_int_distribution<int>(1, 9)(rng)});
    auto w = oracle::random_integer_weight(g, rng).cast<Rational>();
    auto e = oracle::random_set(g, rng, 0.5);
    FlatArray<Rational> num(g.cell_count());
    for (std::int64_t i = 0; i < num.size(); ++i) num[i] = e.contains(i) ? w[i] : Rational(0);
    auto m = interval_max_1d<Rational>(
        std::span<const Rational>(num.data(), num.size()),
        std::span<const Rational>(w.values().data(), w.values().size()));
    auto ref = oracle::max_field<Rational>(g, num, &w.values());
    for (std::int64_t i = 0; i < g.cell_count(); ++i) EXPECT_EQ(m[i], ref[i]);
  }
}

}  // namespace
}  // namespace solyanik
