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

#ifndef SOLYANIK_WEIGHTS_H_
#define SOLYANIK_WEIGHTS_H_

// Muckenhoupt-type constants of grid weights, computed by exhaustive
// enumeration of intervals and boxes, and the domination / reverse Hölder
// machinery that certifies discrete Solyanik bounds.

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "solyanik/lattice.h"

namespace solyanik {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Cap on the domination exponent. Constant weights would otherwise certify
// an infinite exponent.
inline constexpr double kDefaultSMax = 64.0;

// One-dimensional constants. The argument must live on a 1D grid.
double ap_constant_1d(const Weights& w, double p);
double a1_constant_1d(const Weights& w);
// sup_I (1 / w(I)) sum_{x in I} M(w 1_I)(x), M the grid-interval operator.
double fujii_wilson_1d(const Weights& w);

// max over axes j and lines x̄ of the 1D constant of w_{x̄^j}. p == 1 uses
// the A_1 constant, p == +inf the Fujii-Wilson constant.
double ap_star(const Weights& w, double p);

// Constants over all grid boxes. p == 1 is the A_1 form
// sup_R avg_R(w) / min_R(w); p == +inf is the Hruščev form.
double ap_rec(const Weights& w, double p);
double a1_rec(const Weights& w);
// sup_R avg_R(w) exp(avg_R log w^{-1}).
double hruscev_rec(const Weights& w);

// w(E) / w(I) <= b (|E| / |I|)^s certified on a family of (I, E).
struct DominationPair {
  double b = 1;
  double s = 1;
};

struct DominationWitness {
  double s = kDefaultSMax;
  GridBox interval;  // binding interval (meaningless when s == s_max)
  int k = 0;         // binding subset size: the k heaviest cells of I
};

// Largest s <= s_max with w(E)/w(I) <= b (|E|/|I|)^s for every interval I and
// every E ⊆ I. The worst E of each size k is the k heaviest cells.
DominationWitness domination_witness(const Weights& w1d, double b,
                                     double s_max = kDefaultSMax);
double domination_exponent(const Weights& w1d, double b,
                           double s_max = kDefaultSMax);

// min over every 1D slice of domination_exponent(slice, 2).
double certified_exponent(const Weights& w, double s_max = kDefaultSMax);

struct ReverseHolderReport {
  double r = 2;
  double worst_ratio = 1;  // max_R (avg_R w^r)^{1/r} / avg_R w
  GridBox worst_box;
  double constant = kInfinity;
  bool holds = true;  // worst_ratio <= constant
};

ReverseHolderReport rhi_verify(const Weights& w, double r, double constant);

// B^{beta/r'} ((beta' - 1) / (beta' - r))^{1/r}, 1/beta + 1/beta' = 1,
// valid for 1 < r < beta'. beta == 1 means beta' = +inf.
double rhi_constant_from_domination(double b, double beta, double r);

// Model for the L^r operator norm of the 1D uncentered maximal operator.
using NormModel = std::function<double(double)>;

// Marcinkiewicz interpolation between weak (1,1) with constant 2 and
// L^inf with constant 1: 2 (2 r')^{1/r}.
double hl_norm_marcinkiewicz(double r);

// inf over 1 < r < beta' of model(r) * rhi_constant_from_domination(b,beta,r),
// minimised over a log-spaced grid in r - 1.
double ainfty_upper_from_domination(double b, double beta,
                                    const NormModel& model = hl_norm_marcinkiewicz);

struct WeightConstantsReport {
  double p = 2;
  double ap_star = 1;
  double ap_rec = 1;
  double fujii_wilson_per_slice_sup = 1;
  double hruscev_rec = 1;
  double certified_exponent_s = kDefaultSMax;
  double s_max = kDefaultSMax;
};

WeightConstantsReport weight_constants(const Weights& w, double p,
                                       double s_max = kDefaultSMax);
nlohmann::json to_json(const WeightConstantsReport& r);

// ---------------------------------------------------------------------------
// Generators.

struct ConstantSpec {
  double c = 1;
};
// t on cells with odd coordinate sum, 1 elsewhere.
struct CheckerboardSpec {
  double t = 4;
};
// prod_j |x_j + 1/2 - center_j|^{a_j}, sampled at cell midpoints. Single
// entries broadcast to every axis.
struct PowerSpec {
  std::vector<double> exponent{1};
  std::vector<double> center{0};
};
// u ⊗ v [⊗ z]; the grid is given by the factor lengths.
struct TensorSpec {
  std::vector<std::vector<double>> factors;
};
// exp(sigma Z), Z standard normal drawn from mt19937_64(seed).
struct LognormalSpec {
  double sigma = 0.5;
  std::uint64_t seed = 1;
};

using WeightSpec = std::variant<ConstantSpec, CheckerboardSpec, PowerSpec,
                                TensorSpec, LognormalSpec>;

// Parses "constant:c", "checkerboard:t", "power:a[,a..]:c[,c..]",
// "tensor:u1,u2,..;v1,v2,..", "lognormal:sigma:seed".
WeightSpec parse_weight_spec(const std::string& text);
std::string to_string(const WeightSpec& spec);

// Deterministic in (spec, grid). A TensorSpec requires the grid returned by
// tensor_grid().
Weights generate_weight(const WeightSpec& spec, const Grid& grid);
Grid tensor_grid(const TensorSpec& spec);

}  // namespace solyanik

#endif  // SOLYANIK_WEIGHTS_H_
