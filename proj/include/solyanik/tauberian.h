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

#ifndef SOLYANIK_TAUBERIAN_H_
#define SOLYANIK_TAUBERIAN_H_

// Sharp Tauberian constants C(alpha) = sup_E w({M f_E > alpha}) / w(E):
// certified lower bounds by exhaustion or seeded search, and the explicit
// upper-bound formulas they are compared against.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "solyanik/lattice.h"
#include "solyanik/weights.h"

namespace solyanik {

// Thrown when a bound is evaluated outside the alpha range on which it is
// stated.
class BoundRangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class MaximalKind {
  kStrong,    // Lebesgue box averages (M_S; M_1 on 1D grids)
  kWeighted,  // averages against the ambient weight (M_S^w; M^mu)
};

// Which operator, which ambient measure, and the perturbation gamma of
// f_{E,gamma} = 1_E + gamma 1_{E^c}. Level sets and E are measured with
// `ambient`.
struct TauberianProblem {
  MaximalKind kind = MaximalKind::kStrong;
  Weights ambient;
  double gamma = 0;

  static TauberianProblem strong(Weights w) {
    return {MaximalKind::kStrong, std::move(w), 0.0};
  }
  static TauberianProblem strong_weighted(Weights w) {
    return {MaximalKind::kWeighted, std::move(w), 0.0};
  }
  static TauberianProblem interval_1d(Weights w);
  // Atoms become the cells of a 1D grid in coordinate order.
  static TauberianProblem point_mass(const PointMassMeasure& mu, double gamma);
};

CellSet tauberian_level_set(const TauberianProblem& problem, const CellSet& e,
                            double alpha);
// ambient(level set) / ambient(E).
double tauberian_ratio(const TauberianProblem& problem, const CellSet& e,
                       double alpha);

enum class EstimateMethod { kExhaustive, kSearch };
std::string to_string(EstimateMethod m);

struct TauberianEstimate {
  double alpha = 0.5;
  double lower_bound = 1;
  CellSet witness;
  EstimateMethod method = EstimateMethod::kExhaustive;
};

inline constexpr std::int64_t kExhaustiveCellLimit = 20;

// Exact discrete constant: max over all nonempty cell sets.
TauberianEstimate tauberian_exhaustive(const TauberianProblem& problem,
                                       double alpha);
// Same, for several alphas at once (one maximal field per subset).
std::vector<TauberianEstimate> tauberian_exhaustive_sweep(
    const TauberianProblem& problem, std::span<const double> alphas);

// Certified lower bound from boxes, staircase unions, random subsets,
// box complements and greedy single-cell moves. `budget` counts level-set
// evaluations. Deterministic in (problem, alpha, budget, seed).
TauberianEstimate tauberian_search(const TauberianProblem& problem,
                                   double alpha, int budget,
                                   std::uint64_t seed);

// ---------------------------------------------------------------------------
// Explicit bounds.

// (1 - 4((1-alpha)/(1-gamma))^s)^{-1}.
double solyanik_1d_bound(double alpha, double gamma, double s);
// 1 + 2 (1-alpha) / (alpha-gamma).
double measure_1d_bound(double alpha, double gamma);

// alpha_j = 1 - (1-alpha_1)^j, with the gaps 1 - alpha_j kept separately.
struct AlphaSchedule {
  std::vector<double> alphas;
  std::vector<double> gaps;
};
AlphaSchedule alpha_schedule(double alpha1, int m);

struct IteratedBound {
  AlphaSchedule schedule;
  double bound = 1;
};
// Schedule plus (1 - 4 (1-alpha_1)^s)^{-m}.
IteratedBound iter_bound(double alpha1, int m, double s);

// (1 - 4 (1-alpha)^{s/n})^{-n}, from alpha_1 = 1 - (1-alpha)^{1/n}.
double strong_bound(double alpha, int n, double s);
bool strong_bound_valid(double alpha, int n, double s);

// Hypothesis C(alpha) - 1 <= B (1-alpha)^{1/beta} for alpha > 1 - e^{-gamma}.
struct SolyanikParams {
  double b = 1;
  double beta = 1;
  double gamma = 0;
};

SolyanikParams params_from_strong_bound(int n, double s);
DominationPair fromsol_domination(const SolyanikParams& params);

// 1 - K^{1/p} (1-alpha)^{1/p}, for alpha > 1 - 1/K.
double mw_reduction_threshold(double alpha, double p, double k);

// exp[log C (ceil(-log(alpha0/lambda)/log alpha0)
//            * ceil(2 + log+(2 alpha0)/log(1/alpha0)) + 1)],
// ceil(x) being the smallest positive integer >= x.
double weak_type_from_tauberian(double c_at_alpha0, double alpha0,
                                double lambda);
int positive_ceiling(double x);

// 1 - 8^{-8 a}.
double embedding_alpha0(double ainfty_star);

// Point masses delta_0 + sum_j (1/j) delta_{(j, 1/j)} in the plane, with
// S_j = [0, j] x [0, 1/j] isolating x_j from every other x_k.
struct CounterexampleResult {
  double lower_bound = 1;
  PointMassMeasure measure;            // atom 0 is the origin
  std::vector<std::size_t> witnesses;  // atoms j with 1/(1+c_j) > alpha
};
CounterexampleResult dirac_counterexample(int n, double alpha);

}  // namespace solyanik

#endif  // SOLYANIK_TAUBERIAN_H_
