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

#include "solyanik/tauberian.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "solyanik/maximal.h"

namespace solyanik {
namespace {

void check_alpha(const TauberianProblem& p, double alpha) {
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("tauberian: alpha must lie in (0,1)");
  if (!(p.gamma >= 0 && p.gamma < alpha))
    throw std::invalid_argument("tauberian: need 0 <= gamma < alpha");
}

FlatArray<double> numerator(const TauberianProblem& p, const CellSet& e) {
  const auto& w = p.ambient.values();
  FlatArray<double> num(w.size());
  for (Eigen::Index i = 0; i < num.size(); ++i) {
    double f = e.contains(i) ? 1.0 : p.gamma;
    num[i] = p.kind == MaximalKind::kWeighted ? f * w[i] : f;
  }
  return num;
}

const FlatArray<double>* denominator(const TauberianProblem& p) {
  return p.kind == MaximalKind::kWeighted ? &p.ambient.values() : nullptr;
}

// Full maximal field of f_{E,gamma}; exact per-line scan on 1D grids.
std::vector<double> maximal_values(const TauberianProblem& p, const CellSet& e) {
  FlatArray<double> num = numerator(p, e);
  const Grid& g = p.ambient.grid();
  if (g.dim() == 1) {
    std::span<const double> n(num.data(), static_cast<std::size_t>(num.size()));
    std::span<const double> d;
    if (p.kind == MaximalKind::kWeighted)
      d = {p.ambient.values().data(), static_cast<std::size_t>(num.size())};
    return interval_max_1d<double>(n, d);
  }
  auto field = ratio_max_field<double>(g, num, denominator(p));
  return {field.values().data(), field.values().data() + field.values().size()};
}

double level_mass(const TauberianProblem& p, const std::vector<double>& m,
                  double alpha) {
  double mass = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > alpha) mass += p.ambient[static_cast<std::int64_t>(i)];
  return mass;
}

double gap_power_term(double gap, double s) { return 4.0 * std::pow(gap, s); }

double strong_bound_from_gap(double gap, int n, double s) {
  double t = gap_power_term(gap, s / n);
  if (!(t < 1))
    throw BoundRangeError("strong_bound: 4(1-alpha)^{s/n} must be < 1");
  return std::pow(1.0 - t, -n);
}

}  // namespace

TauberianProblem TauberianProblem::interval_1d(Weights w) {
  if (w.grid().dim() != 1)
    throw std::invalid_argument("interval_1d: weight must be 1D");
  return {MaximalKind::kStrong, std::move(w), 0.0};
}

TauberianProblem TauberianProblem::point_mass(const PointMassMeasure& mu,
                                              double gamma) {
  return {MaximalKind::kWeighted, mu.as_1d_weight(), gamma};
}

CellSet tauberian_level_set(const TauberianProblem& p, const CellSet& e,
                            double alpha) {
  check_alpha(p, alpha);
  if (!(e.grid() == p.ambient.grid()))
    throw std::invalid_argument("tauberian: grid mismatch");
  if (e.empty()) throw std::invalid_argument("tauberian: E is empty");
  return ratio_level_set<double>(e.grid(), numerator(p, e), denominator(p), alpha);
}

double tauberian_ratio(const TauberianProblem& p, const CellSet& e,
                       double alpha) {
  CellSet level = tauberian_level_set(p, e, alpha);
  return weighted_measure(p.ambient, level) / weighted_measure(p.ambient, e);
}

std::string to_string(EstimateMethod m) {
  return m == EstimateMethod::kExhaustive ? "exhaustive" : "search";
}

std::vector<TauberianEstimate> tauberian_exhaustive_sweep(
    const TauberianProblem& p, std::span<const double> alphas) {
  const Grid& g = p.ambient.grid();
  if (g.cell_count() > kExhaustiveCellLimit)
    throw std::invalid_argument("tauberian_exhaustive: grid has more than " +
                                std::to_string(kExhaustiveCellLimit) + " cells");
  for (double a : alphas) check_alpha(p, a);
  const int n = static_cast<int>(g.cell_count());
  std::vector<TauberianEstimate> out(alphas.size());
  std::vector<std::uint32_t> best_mask(alphas.size(), 0);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    out[k].alpha = alphas[k];
    out[k].lower_bound = 0;
  }
  CellSet e(g);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    double mass_e = 0;
    for (int i = 0; i < n; ++i) {
      bool on = (mask >> i) & 1u;
      e.set(i, on);
      if (on) mass_e += p.ambient[i];
    }
    auto m = maximal_values(p, e);
    for (std::size_t k = 0; k < alphas.size(); ++k) {
      double ratio = level_mass(p, m, alphas[k]) / mass_e;
      if (ratio > out[k].lower_bound) {
        out[k].lower_bound = ratio;
        best_mask[k] = mask;
      }
    }
  }
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    std::vector<std::int64_t> idx;
    for (int i = 0; i < n; ++i)
      if ((best_mask[k] >> i) & 1u) idx.push_back(i);
    out[k].witness = CellSet::from_indices(g, idx);
    out[k].method = EstimateMethod::kExhaustive;
  }
  return out;
}

TauberianEstimate tauberian_exhaustive(const TauberianProblem& p, double alpha) {
  const double a[] = {alpha};
  return tauberian_exhaustive_sweep(p, a).front();
}

TauberianEstimate tauberian_search(const TauberianProblem& p, double alpha,
                                   int budget, std::uint64_t seed) {
  check_alpha(p, alpha);
  if (budget < 1) throw std::invalid_argument("tauberian_search: budget < 1");
  const Grid& g = p.ambient.grid();
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int used = 0;
  TauberianEstimate best;
  best.alpha = alpha;
  best.lower_bound = 0;
  best.method = EstimateMethod::kSearch;
  struct Scored {
    double ratio;
    CellSet set;
  };
  std::vector<Scored> pool;  // leading candidates kept for local moves
  auto evaluate = [&](const CellSet& e) -> double {
    if (used >= budget || e.empty()) return -1;
    ++used;
    double r = tauberian_ratio(p, e, alpha);
    if (r > best.lower_bound) {
      best.lower_bound = r;
      best.witness = e;
    }
    return r;
  };
  auto remember = [&](double r, const CellSet& e) {
    if (r < 0) return;
    pool.push_back({r, e});
    std::stable_sort(pool.begin(), pool.end(),
                     [](const Scored& a, const Scored& b) { return a.ratio > b.ratio; });
    if (pool.size() > 3) pool.pop_back();
  };
  auto random_box = [&] {
    GridBox b;
    for (int a = 0; a < g.dim(); ++a) {
      int x = uniform(0, g.size(a) - 1), y = uniform(0, g.size(a) - 1);
      b.lo[a] = std::min(x, y);
      b.hi[a] = std::max(x, y) + 1;
    }
    return b;
  };
  const int quota = std::max(1, budget / 8);

  // Single boxes: all of them when affordable, otherwise a sample.
  if (box_count(g) <= 2 * quota) {
    for_each_box(g, [&](const GridBox& b) {
      CellSet e = CellSet::from_box(g, b);
      remember(evaluate(e), e);
    });
  } else {
    for (int i = 0; i < 2 * quota; ++i) {
      CellSet e = CellSet::from_box(g, random_box());
      remember(evaluate(e), e);
    }
  }
  // Staircases: k boxes sharing a corner, growing along axis 0 while
  // shrinking along axis 1. On 1D grids these are unions of k intervals.
  for (int i = 0; i < quota; ++i) {
    int k = uniform(2, 5);
    CellSet e(g);
    if (g.dim() == 1) {
      for (int j = 0; j < k; ++j) e |= CellSet::from_box(g, random_box());
    } else {
      Coords corner{0, 0, 0};
      Coords dir{1, 1, 1};
      for (int a = 0; a < g.dim(); ++a) {
        corner[a] = uniform(0, g.size(a) - 1);
        dir[a] = uniform(0, 1) ? 1 : -1;
      }
      for (int j = 0; j < k; ++j) {
        GridBox b;
        for (int a = 0; a < g.dim(); ++a) {
          int room = dir[a] > 0 ? g.size(a) - corner[a] : corner[a] + 1;
          int len;
          if (a == 0)
            len = std::max(1, room * (j + 1) / k);
          else if (a == 1)
            len = std::max(1, room * (k - j) / k);
          else
            len = uniform(1, room);
          b.lo[a] = dir[a] > 0 ? corner[a] : corner[a] - len + 1;
          b.hi[a] = b.lo[a] + len;
        }
        e |= CellSet::from_box(g, b);
      }
    }
    remember(evaluate(e), e);
  }
  // Random subsets at fixed densities.
  const double densities[] = {0.05, 0.1, 0.25, 0.5, 0.75, 0.9};
  for (int i = 0; i < quota; ++i) {
    std::bernoulli_distribution coin(densities[i % 6]);
    CellSet e(g);
    for (std::int64_t c = 0; c < g.cell_count(); ++c) e.set(c, coin(rng));
    remember(evaluate(e), e);
  }
  // Complements of boxes.
  for (int i = 0; i < quota; ++i) {
    CellSet e = CellSet::from_box(g, random_box()).complement();
    remember(evaluate(e), e);
  }
  // Greedy single-cell toggles from the leading candidates.
  std::vector<std::int64_t> order(static_cast<std::size_t>(g.cell_count()));
  std::iota(order.begin(), order.end(), 0);
  for (const Scored& start : std::vector<Scored>(pool)) {
    CellSet e = start.set;
    double current = start.ratio;
    bool improved = true;
    while (improved && used < budget) {
      improved = false;
      std::shuffle(order.begin(), order.end(), rng);
      for (std::int64_t c : order) {
        if (used >= budget) break;
        e.set(c, !e.contains(c));
        double r = evaluate(e);
        if (r > current) {
          current = r;
          improved = true;
        } else {
          e.set(c, !e.contains(c));
        }
      }
    }
  }
  if (best.witness.grid().cell_count() != g.cell_count() || best.witness.empty()) {
    best.witness = CellSet::full(g);
    best.lower_bound = 1.0;
  }
  return best;
}

double solyanik_1d_bound(double alpha, double gamma, double s) {
  if (!(gamma >= 0 && gamma < alpha && alpha < 1))
    throw BoundRangeError("solyanik_1d_bound: need 0 <= gamma < alpha < 1");
  if (!(s > 0)) throw std::invalid_argument("solyanik_1d_bound: need s > 0");
  double t = gap_power_term((1.0 - alpha) / (1.0 - gamma), s);
  if (!(t < 1))
    throw BoundRangeError("solyanik_1d_bound: 4((1-alpha)/(1-gamma))^s must be < 1");
  return 1.0 / (1.0 - t);
}

double measure_1d_bound(double alpha, double gamma) {
  if (!(gamma >= 0 && gamma < alpha && alpha < 1))
    throw BoundRangeError("measure_1d_bound: need 0 <= gamma < alpha < 1");
  return 1.0 + 2.0 * (1.0 - alpha) / (alpha - gamma);
}

AlphaSchedule alpha_schedule(double alpha1, int m) {
  if (!(alpha1 > 0 && alpha1 < 1) || m < 1)
    throw std::invalid_argument("alpha_schedule: need alpha1 in (0,1), m >= 1");
  AlphaSchedule s;
  double gap = 1.0 - alpha1;
  for (int j = 0; j < m; ++j) {
    s.gaps.push_back(gap);
    s.alphas.push_back(1.0 - gap);
    gap *= 1.0 - alpha1;
  }
  return s;
}

IteratedBound iter_bound(double alpha1, int m, double s) {
  if (!(s > 0)) throw std::invalid_argument("iter_bound: need s > 0");
  IteratedBound out;
  out.schedule = alpha_schedule(alpha1, m);
  double t = gap_power_term(1.0 - alpha1, s);
  if (!(t < 1)) throw BoundRangeError("iter_bound: 4(1-alpha_1)^s must be < 1");
  out.bound = std::pow(1.0 - t, -m);
  return out;
}

bool strong_bound_valid(double alpha, int n, double s) {
  return alpha > 0 && alpha < 1 && n >= 1 && s > 0 &&
         gap_power_term(1.0 - alpha, s / n) < 1;
}

double strong_bound(double alpha, int n, double s) {
  if (!(alpha > 0 && alpha < 1))
    throw BoundRangeError("strong_bound: alpha must lie in (0,1)");
  if (n < 1 || !(s > 0))
    throw std::invalid_argument("strong_bound: need n >= 1 and s > 0");
  return strong_bound_from_gap(1.0 - alpha, n, s);
}

SolyanikParams params_from_strong_bound(int n, double s) {
  if (n < 1 || !(s > 0))
    throw std::invalid_argument("params_from_strong_bound: need n >= 1, s > 0");
  SolyanikParams out;
  out.beta = n / s;
  out.gamma = out.beta * std::log(8.0);
  // 1 - alpha runs log-uniformly from e^{-gamma} down twelve decades.
  constexpr int kPoints = 512;
  const double top_gap = std::exp(-out.gamma);
  double b = 0;
  for (int k = 0; k < kPoints; ++k) {
    double gap = top_gap * std::pow(10.0, -12.0 * k / (kPoints - 1));
    double x = std::pow(gap, s / n);
    b = std::max(b, (strong_bound_from_gap(gap, n, s) - 1.0) / x);
  }
  out.b = std::max(b, 1.0);
  return out;
}

DominationPair fromsol_domination(const SolyanikParams& params) {
  if (!(params.b >= 1) || !(params.beta >= 1) || !(params.gamma >= 0))
    throw std::invalid_argument("fromsol_domination: need B, beta >= 1, gamma >= 0");
  return {std::max(params.b, std::exp(params.gamma / params.beta)),
          1.0 / params.beta};
}

double mw_reduction_threshold(double alpha, double p, double k) {
  if (!(p >= 1) || !(k >= 1))
    throw std::invalid_argument("mw_reduction_threshold: need p >= 1, K >= 1");
  if (!(alpha < 1 && alpha > 1.0 - 1.0 / k))
    throw BoundRangeError("mw_reduction_threshold: need 1 - 1/K < alpha < 1");
  return 1.0 - std::pow(k, 1.0 / p) * std::pow(1.0 - alpha, 1.0 / p);
}

int positive_ceiling(double x) {
  double c = std::ceil(x);
  return c < 1 ? 1 : static_cast<int>(c);
}

double weak_type_from_tauberian(double c_at_alpha0, double alpha0,
                                double lambda) {
  if (!(c_at_alpha0 >= 1))
    throw std::invalid_argument("weak_type_from_tauberian: need C >= 1");
  if (!(alpha0 > 0 && alpha0 < 1) || !(lambda > 0 && lambda <= 1))
    throw std::invalid_argument(
        "weak_type_from_tauberian: need alpha0 in (0,1), lambda in (0,1]");
  const double log_a = std::log(alpha0);
  double steps = -std::log(alpha0 / lambda) / log_a;
  double factor = 2.0 + std::max(0.0, std::log(2.0 * alpha0)) / -log_a;
  double exponent =
      static_cast<double>(positive_ceiling(steps)) * positive_ceiling(factor) + 1.0;
  return std::exp(std::log(c_at_alpha0) * exponent);
}

double embedding_alpha0(double ainfty_star) {
  if (!(ainfty_star >= 1))
    throw std::invalid_argument("embedding_alpha0: need [w] >= 1");
  return 1.0 - std::pow(8.0, -8.0 * ainfty_star);
}

CounterexampleResult dirac_counterexample(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("dirac_counterexample: need N >= 1");
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("dirac_counterexample: alpha must lie in (0,1)");
  std::vector<Atom> atoms;
  atoms.push_back({{0.0, 0.0}, 1.0});
  for (int j = 1; j <= n; ++j)
    atoms.push_back({{static_cast<double>(j), 1.0 / j}, 1.0 / j});
  CounterexampleResult out;
  out.measure = PointMassMeasure(std::move(atoms));
  // On S_j the set E = {0} has relative mass 1 / (1 + 1/j) = j / (j + 1).
  for (int j = 1; j <= n; ++j)
    if (static_cast<double>(j) / (j + 1.0) > alpha) out.witnesses.push_back(j);
  double tail = 0;
  for (auto it = out.witnesses.rbegin(); it != out.witnesses.rend(); ++it)
    tail += 1.0 / static_cast<double>(*it);
  out.lower_bound = 1.0 + tail;
  return out;
}

}  // namespace solyanik
