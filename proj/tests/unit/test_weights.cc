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

#include <cmath>
#include <random>

#include "../oracles.h"
#include "solyanik/weights.h"

namespace solyanik {
namespace {

Weights line(std::vector<double> v) {
  return Weights::from_vector(Grid({static_cast<int>(v.size())}), v);
}

Weights tensor(const std::vector<double>& u, const std::vector<double>& v) {
  TensorSpec t{{u, v}};
  return generate_weight(t, tensor_grid(t));
}

TEST(Ap1d, Examples) {
  EXPECT_DOUBLE_EQ(ap_constant_1d(line({1, 1, 1}), 2), 1.0);
  EXPECT_DOUBLE_EQ(ap_constant_1d(line({1, 4}), 2), 25.0 / 16.0);
  EXPECT_DOUBLE_EQ(a1_constant_1d(line({1, 1, 1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(a1_constant_1d(line({1, 4})), 2.5);
  EXPECT_DOUBLE_EQ(a1_constant_1d(line({4, 1})), 2.5);
  EXPECT_DOUBLE_EQ(fujii_wilson_1d(line({1, 1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(fujii_wilson_1d(line({1, 4})), 1.3);
  EXPECT_THROW(ap_constant_1d(Weights::constant(Grid({2, 2}), 1.0), 2), std::invalid_argument);
}

TEST(Ap1d, MatchesOracle) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto w = oracle::random_weight(Grid({std::uniform_int_distribution<int>(1, 12)(rng)}), rng);
    std::vector<double> v(w.values().begin(), w.values().end());
    for (double p : {1.5, 2.0, 4.0})
      EXPECT_NEAR(ap_constant_1d(w, p), oracle::ap_1d(v, p), 1e-12 * oracle::ap_1d(v, p));
    EXPECT_NEAR(a1_constant_1d(w), oracle::a1_1d(v), 1e-12 * oracle::a1_1d(v));
  }
}

TEST(ApStar, Examples) {
  EXPECT_DOUBLE_EQ(ap_star(Weights::constant(Grid({3, 3}), 2.0), 2), 1.0);
  EXPECT_DOUBLE_EQ(ap_star(tensor({1, 4}, {1, 4}), 2), 25.0 / 16.0);
  // Constant along axis 1: only axis-0 slices carry the 1D constant.
  Grid g({2, 3});
  auto w = Weights::from_vector(g, {1, 1, 1, 4, 4, 4});
  EXPECT_DOUBLE_EQ(ap_star(w, 2), 25.0 / 16.0);
  EXPECT_DOUBLE_EQ(ap_star(w, 1), 2.5);
  EXPECT_DOUBLE_EQ(ap_star(w, kInfinity), 1.3);
}

TEST(ApRec, Examples) {
  EXPECT_DOUBLE_EQ(ap_rec(Weights::constant(Grid({3, 3}), 5.0), 2), 1.0);
  EXPECT_DOUBLE_EQ(ap_rec(tensor({1, 4}, {1, 4}), 2), 625.0 / 256.0);
  Grid g({2, 3});
  auto w = Weights::from_vector(g, {1, 1, 1, 4, 4, 4});
  EXPECT_DOUBLE_EQ(ap_rec(w, 2), 25.0 / 16.0);
  EXPECT_DOUBLE_EQ(hruscev_rec(Weights::constant(Grid({3, 3}), 2.0)), 1.0);
  EXPECT_DOUBLE_EQ(a1_rec(tensor({1, 4}, {1, 4})), 6.25);
}

TEST(ApRec, LemmaAndTensorIdentities) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    std::lognormal_distribution<double> d(0, 1);
    std::vector<double> u(4), v(5);
    for (auto& x : u) x = d(rng);
    for (auto& x : v) x = d(rng);
    auto w = tensor(u, v);
    for (double p : {1.5, 2.0, 4.0}) {
      double pu = oracle::ap_1d(u, p), pv = oracle::ap_1d(v, p);
      EXPECT_NEAR(ap_rec(w, p), pu * pv, 1e-9 * pu * pv);
      EXPECT_NEAR(ap_star(w, p), std::max(pu, pv), 1e-9 * std::max(pu, pv));
      EXPECT_LE(ap_star(w, p), ap_rec(w, p) * (1 + 1e-12));
    }
    EXPECT_NEAR(a1_rec(w), oracle::a1_1d(u) * oracle::a1_1d(v), 1e-9 * a1_rec(w));
    auto r = oracle::random_weight(Grid({3, 4}), rng);
    for (double p : {1.0, 1.5, 2.0, 4.0}) EXPECT_LE(ap_star(r, p), ap_rec(r, p) * (1 + 1e-12));
  }
}

TEST(Domination, Examples) {
  EXPECT_DOUBLE_EQ(domination_exponent(line({1}), 2), kDefaultSMax);
  EXPECT_NEAR(domination_exponent(line({1, 4}), 2), std::log(2.5) / std::log(2.0), 1e-12);
  auto wit = domination_witness(line({1, 4}), 2);
  EXPECT_EQ(wit.interval, GridBox::interval(0, 2));
  EXPECT_EQ(wit.k, 1);
  for (double t : {10.0, 100.0, 1e4}) {
    double s = domination_exponent(line({1, t}), 2);
    EXPECT_NEAR(s, std::log(2 * (1 + t) / t) / std::log(2.0), 1e-12);
    EXPECT_GT(s, 1.0);
  }
  // Unit weight: |E|/|I| <= 2 (|E|/|I|)^s binds at k = 1 on the longest interval.
  for (int n : {2, 4, 8})
    EXPECT_NEAR(domination_exponent(Weights::constant(Grid({n}), 1.0), 2),
                1 + std::log(2.0) / std::log(double(n)), 1e-12);
}

TEST(Domination, CertifiedExponentExamples) {
  EXPECT_NEAR(certified_exponent(tensor({1, 4}, {1, 4})), std::log(2.5) / std::log(2.0), 1e-12);
  Grid g({2, 3});
  auto w = Weights::from_vector(g, {1, 1, 1, 4, 4, 4});
  EXPECT_NEAR(certified_exponent(w), std::min(domination_exponent(line({1, 4}), 2),
                                               domination_exponent(line({1, 1, 1}), 2)),
              1e-12);
}

TEST(Domination, SoundAgainstAllSubsets) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 40; ++t) {
    int n = std::uniform_int_distribution<int>(1, 9)(rng);
    auto w = oracle::random_weight(Grid({n}), rng, 1.5);
    std::vector<double> v(w.values().begin(), w.values().end());
    for (double b : {2.0, 4.0}) {
      double s = domination_exponent(w, b);
      double ref = oracle::domination_all_subsets(v, b, kDefaultSMax);
      EXPECT_NEAR(s, ref, 1e-9 * std::max(1.0, ref)) << "n=" << n << " b=" << b;
    }
  }
}

TEST(ReverseHolder, Examples) {
  auto one = rhi_verify(Weights::constant(Grid({4}), 3.0), 2.5, 1.0);
  EXPECT_NEAR(one.worst_ratio, 1.0, 1e-12);
  auto r2 = rhi_verify(line({1, 4}), 2, 10);
  EXPECT_NEAR(r2.worst_ratio, std::sqrt(8.5) / 2.5, 1e-12);
  EXPECT_EQ(r2.worst_box, GridBox::interval(0, 2));
  EXPECT_TRUE(r2.holds);
  EXPECT_FALSE(rhi_verify(line({1, 4}), 2, 1.1).holds);
  EXPECT_GE(rhi_verify(line({1, 4}), 3, 10).worst_ratio, r2.worst_ratio);
  EXPECT_THROW(rhi_verify(line({1, 4}), 1.0, 10), std::invalid_argument);
}

TEST(ReverseHolder, ConstantFromDomination) {
  EXPECT_NEAR(rhi_constant_from_domination(2, 2, 1.5), std::pow(4.0, 2.0 / 3.0), 1e-12);
  for (double beta : {1.5, 2.0, 5.0}) {
    double bd = beta / (beta - 1);
    double r = 1 + 0.5 * (bd - 1);
    EXPECT_NEAR(rhi_constant_from_domination(1, beta, r),
                std::pow((bd - 1) / (bd - r), 1 / r), 1e-12);
    EXPECT_NEAR(rhi_constant_from_domination(3, beta, 1 + 1e-9), 1.0, 1e-6);
  }
  EXPECT_NEAR(rhi_constant_from_domination(2, 1, 3), std::pow(2.0, 2.0 / 3.0), 1e-12);
  EXPECT_THROW(rhi_constant_from_domination(2, 2, 2), std::domain_error);
  EXPECT_THROW(rhi_constant_from_domination(2, 2, 3), std::domain_error);
}

TEST(ReverseHolder, HoldsFromEmpiricalDomination) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 30; ++t) {
    auto w = oracle::random_weight(Grid({std::uniform_int_distribution<int>(2, 12)(rng)}), rng, 1.5);
    double s = domination_exponent(w, 2);
    double beta = std::max(1.0, 1 / s);
    double bd = beta == 1.0 ? 10.0 : beta / (beta - 1);
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double r = 1 + f * (bd - 1);
      double c = rhi_constant_from_domination(2, beta, r);
      EXPECT_LE(rhi_verify(w, r, c).worst_ratio, c * (1 + 1e-9));
    }
  }
}

TEST(AinftyUpper, Structure) {
  EXPECT_TRUE(std::isfinite(ainfty_upper_from_domination(1, 50)));
  double prev = 0;
  for (double b : {1.0, 2.0, 4.0, 8.0}) {
    double v = ainfty_upper_from_domination(b, 2);
    EXPECT_GE(v, 1.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(hl_norm_marcinkiewicz(2), 2 * std::sqrt(4.0), 1e-12);
}

TEST(Generators, Examples) {
  Grid g4({4});
  auto one = generate_weight(parse_weight_spec("constant:1"), Grid({3, 3}));
  for (double x : one.values()) EXPECT_EQ(x, 1.0);
  auto cb = generate_weight(parse_weight_spec("checkerboard:4"), g4);
  EXPECT_EQ(std::vector<double>(cb.values().begin(), cb.values().end()),
            (std::vector<double>{1, 4, 1, 4}));
  auto pw = generate_weight(parse_weight_spec("power:1:0"), g4);
  EXPECT_EQ(std::vector<double>(pw.values().begin(), pw.values().end()),
            (std::vector<double>{0.5, 1.5, 2.5, 3.5}));
  auto ln1 = generate_weight(parse_weight_spec("lognormal:0.5:9"), Grid({5, 5}));
  auto ln2 = generate_weight(parse_weight_spec("lognormal:0.5:9"), Grid({5, 5}));
  EXPECT_TRUE((ln1.values() == ln2.values()).all());
  auto tw = generate_weight(parse_weight_spec("tensor:1,4;1,2,3"), Grid({2, 3}));
  EXPECT_EQ(tw[Grid({2, 3}).index({1, 2, 0})], 12.0);
}

TEST(Generators, SpecErrors) {
  EXPECT_THROW(parse_weight_spec("nope:1"), std::invalid_argument);
  EXPECT_THROW(parse_weight_spec("constant:x"), std::invalid_argument);
  EXPECT_THROW(parse_weight_spec("constant:1:2"), std::invalid_argument);
  EXPECT_THROW(generate_weight(parse_weight_spec("constant:0"), Grid({2})), std::invalid_argument);
  EXPECT_THROW(generate_weight(parse_weight_spec("checkerboard:-1"), Grid({2})),
               std::invalid_argument);
  EXPECT_THROW(generate_weight(parse_weight_spec("power:1:0.5"), Grid({2})),
               std::invalid_argument);  // zero at a cell midpoint
  EXPECT_THROW(generate_weight(parse_weight_spec("tensor:1,4;1,4"), Grid({3, 2})),
               std::invalid_argument);
  for (std::string s : {"constant:2.5", "checkerboard:16", "power:0.5,1:0,2",
                        "tensor:1,4;1,2,3", "lognormal:1:42"})
    EXPECT_EQ(to_string(parse_weight_spec(s)), s);
}

TEST(WeightConstants, Report) {
  auto r = weight_constants(tensor({1, 4}, {1, 4}), 2);
  EXPECT_DOUBLE_EQ(r.ap_star, 1.5625);
  EXPECT_NEAR(r.ap_rec, 2.44140625, 1e-12);
  auto j = to_json(weight_constants(Weights::constant(Grid({2}), 1.0), kInfinity));
  EXPECT_EQ(j["p"], "inf");
  EXPECT_EQ(j["ap_star"], 1.0);
}

}  // namespace
}  // namespace solyanik
