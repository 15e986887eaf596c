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

#include <algorithm>
#include <cmath>
#include <random>

#include "solyanik/commands.h"
#include "solyanik/covering.h"
#include "solyanik/exact.h"
#include "solyanik/maximal.h"
#include "solyanik/tauberian.h"
#include "solyanik/weights.h"

namespace solyanik {
namespace {

using nlohmann::json;

struct NamedWeight {
  std::string name;
  Weights w;
};

std::vector<NamedWeight> generator_suite(const Grid& g, std::uint64_t seed) {
  std::vector<std::string> specs = {
      "constant:1",       "checkerboard:2", "checkerboard:4",
      "checkerboard:16",  "power:0.5:0",    "power:1:0",
      "lognormal:0.5:" + std::to_string(seed),
      "lognormal:1:" + std::to_string(seed)};
  std::vector<NamedWeight> out;
  for (const auto& s : specs) out.push_back({s, generate_weight(parse_weight_spec(s), g)});
  return out;
}

GridBox random_box(const Grid& g, std::mt19937_64& rng) {
  GridBox b;
  for (int a = 0; a < g.dim(); ++a) {
    std::uniform_int_distribution<int> d(0, g.size(a) - 1);
    int x = d(rng), y = d(rng);
    b.lo[a] = std::min(x, y);
    b.hi[a] = std::max(x, y) + 1;
  }
  return b;
}

// Random densities, unions of a few boxes, and box complements.
CellSet sample_set(const Grid& g, std::mt19937_64& rng) {
  CellSet e(g);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: {
      const double dens[] = {0.1, 0.3, 0.5, 0.7, 0.9};
      std::bernoulli_distribution coin(dens[std::uniform_int_distribution<int>(0, 4)(rng)]);
      for (std::int64_t i = 0; i < g.cell_count(); ++i) e.set(i, coin(rng));
      break;
    }
    case 1: {
      int k = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int i = 0; i < k; ++i) e |= CellSet::from_box(g, random_box(g, rng));
      break;
    }
    default:
      e = CellSet::from_box(g, random_box(g, rng)).complement();
  }
  if (e.empty())
    e.insert(std::uniform_int_distribution<std::int64_t>(0, g.cell_count() - 1)(rng));
  return e;
}

std::vector<double> alpha_list() {
  return {0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95, 0.99, 0.999};
}

// Exact [w]_{A_2^rec} = max_R avg_R(w) avg_R(1/w).
Rational exact_a2_rec(const Weights& w) {
  auto wq = w.cast<Rational>();
  FlatArray<Rational> inv(wq.values().size());
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv[i] = Rational(1) / wq[i];
  SummedVolume<Rational> s(w.grid(), wq.values()), si(w.grid(), inv);
  Rational best(0);
  for_each_box(w.grid(), [&](const GridBox& b) {
    Rational v(b.volume());
    Rational x = s.sum(b) * si.sum(b) / (v * v);
    if (x > best) best = x;
  });
  return best;
}

class Verifier {
 public:
  explicit Verifier(const RunConfig& c)
      : c_(c), seed_(*c.seed), rng_(*c.seed) {
    if (c.grid.size() == 1) n1_ = c.grid[0];
    if (c.grid.size() == 2) g2_ = c.grid;
  }

  json run() {
    oracle_checks();
    const Grid g1({n1_});
    for (const auto& nw : generator_suite(g1, seed_)) one_dimensional(nw);
    point_mass_checks();
    const Grid g2(g2_);
    for (const auto& nw : generator_suite(g2, seed_)) two_dimensional(nw);
    tensor_checks();
    covering_checks();
    counterexample_checks();

    json report;
    report["config"] = to_json(c_);
    report["hard"] = hard_;
    report["soft"] = soft_;
    report["findings"] = findings_;
    report["violations"] = violations_;
    report["status"] = violations_.empty() ? "pass" : "fail";
    return report;
  }

 private:
  void record(const std::string& check, bool ok, json detail) {
    auto& h = hard_[check];
    if (h.is_null()) h = {{"cases", 0}, {"violations", 0}};
    h["cases"] = h["cases"].get<int>() + 1;
    if (ok) return;
    h["violations"] = h["violations"].get<int>() + 1;
    detail["check"] = check;
    violations_.push_back(std::move(detail));
  }

  void soft(json finding) { soft_.push_back(std::move(finding)); }

  static json instance(const std::string& weight, const CellSet& e) {
    return {{"weight", weight},
            {"grid", e.grid().sizes()},
            {"cells", e.grid().cell_count()},
            {"set", e.members()},
            {"set_size", e.size()}};
  }

  // w(level) <= bound * w(E); a failure in double is re-adjudicated with
  // the level set recomputed exactly.
  template <class ExactLevel>
  bool measure_bound_holds(const Weights& w, const CellSet& level,
                           const CellSet& e, double bound,
                           ExactLevel&& exact_level) {
    if (leq_tol(weighted_measure(w, level), bound * weighted_measure(w, e), c_.tol))
      return true;
    auto wq = w.cast<Rational>();
    CellSet lq = exact_level();
    double ratio = to_double(weighted_measure(wq, lq) / weighted_measure(wq, e));
    return leq_tol(ratio, bound, c_.tol);
  }

  // Painted level sets against per-cell suprema on small 3D grids.
  void oracle_checks() {
    for (int t = 0; t < 5; ++t) {
      std::uniform_int_distribution<int> side(1, 4);
      Grid g({side(rng_), side(rng_), side(rng_)});
      Weights w = generate_weight(LognormalSpec{1.0, seed_ + t}, g);
      CellSet e = sample_set(g, rng_);
      Rational alpha = to_rational(std::uniform_real_distribution<double>(0.05, 0.95)(rng_));
      auto wq = w.cast<Rational>();
      CellSet fast = strong_level_set<Rational>(e, alpha);
      CellSet fast_w = weighted_strong_level_set<Rational>(e, wq, alpha);
      CellSet slow(g), slow_w(g);
      for (std::int64_t x = 0; x < g.cell_count(); ++x) {
        Coords cx = g.coords(x);
        for_each_box(g, [&](const GridBox& b) {
          if (!b.contains(cx)) return;
          Rational in(0), tot(0), win(0);
          for_each_cell(g, b, [&](std::int64_t i) {
            tot += wq[i];
            if (e.contains(i)) {
              in += 1;
              win += wq[i];
            }
          });
          if (in / Rational(b.volume()) > alpha) slow.insert(x);
          if (win / tot > alpha) slow_w.insert(x);
        });
      }
      json d = instance("lognormal:1", e);
      d["alpha"] = to_double(alpha);
      record("oracle_strong_level_set", fast == slow, d);
      record("oracle_weighted_strong_level_set", fast_w == slow_w, d);
    }
  }

  void one_dimensional(const NamedWeight& nw) {
    const Weights& w = nw.w;
    const Grid& g = w.grid();
    const double s = certified_exponent(w);
    const double a_inf = ap_star(w, kInfinity);
    soft({{"check", "certified_exponent_vs_ainfty"},
          {"weight", nw.name},
          {"grid", g.sizes()},
          {"s_star", s},
          {"paper_exponent", 1.0 / (4.0 * a_inf)},
          {"holds", s >= 1.0 / (4.0 * a_inf)}});

    // Interval-operator Solyanik bound with the certified exponent.
    for (double gamma : {0.0, 0.3}) {
      for (int k = 0; k < 10; ++k) {
        CellSet e = sample_set(g, rng_);
        for (double alpha : alpha_list()) {
          if (!(alpha > gamma) || !(4 * std::pow((1 - alpha) / (1 - gamma), s) < 1))
            continue;
          double bound = solyanik_1d_bound(alpha, gamma, s);
          CellSet level = perturbed_level_set_1d<double>({e, gamma}, alpha);
          bool ok = measure_bound_holds(w, level, e, bound, [&] {
            return perturbed_level_set_1d<Rational>({e, to_rational(gamma)},
                                                    to_rational(alpha));
          });
          json d = instance(nw.name, e);
          d["alpha"] = alpha;
          d["gamma"] = gamma;
          d["bound"] = bound;
          record("solyanik_1d", ok, d);
        }
      }
    }

    if (g.cell_count() <= 16) {
      // Weighted-average operator: exhaustive constants against the measure
      // lemma bound, plus monotonicity in alpha.
      std::vector<double> alphas = {0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
      for (double gamma : {0.0, 0.3}) {
        TauberianProblem p{MaximalKind::kWeighted, w, gamma};
        auto est = tauberian_exhaustive_sweep(p, alphas);
        for (std::size_t i = 0; i < est.size(); ++i) {
          double bound = measure_1d_bound(alphas[i], gamma);
          json d = instance(nw.name, est[i].witness);
          d["alpha"] = alphas[i];
          d["gamma"] = gamma;
          d["constant"] = est[i].lower_bound;
          d["bound"] = bound;
          record("measure_1d_exhaustive", leq_tol(est[i].lower_bound, bound, c_.tol), d);
          if (i > 0)
            record("exhaustive_monotone_in_alpha",
                   est[i].lower_bound <= est[i - 1].lower_bound, d);
        }
      }

      // Embedding sanity at alpha_0, with the certified exponent standing in
      // for the A_infinity constant.
      const double a = std::max(1.0, 1.0 / (4.0 * s));
      const double alpha0 = embedding_alpha0(a);
      auto est0 = tauberian_exhaustive(TauberianProblem::interval_1d(w), alpha0);
      const double c0 = solyanik_1d_bound(alpha0, 0.0, s);
      json d = instance(nw.name, est0.witness);
      d["alpha0"] = alpha0;
      d["constant"] = est0.lower_bound;
      d["bound"] = c0;
      record("embedding_alpha0_bound", leq_tol(est0.lower_bound, c0, c_.tol), d);
      soft({{"check", "embedding_alpha0_target"},
            {"weight", nw.name},
            {"alpha0", alpha0},
            {"constant", est0.lower_bound},
            {"target", 65.0 / 64.0},
            {"holds", est0.lower_bound <= 65.0 / 64.0}});

      // Weak-type chain from C(alpha_0) to every lambda.
      auto problem = TauberianProblem::interval_1d(w);
      for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        double bound = weak_type_from_tauberian(c0, alpha0, lambda);
        for (int k = 0; k < 5; ++k) {
          CellSet e = sample_set(g, rng_);
          double ratio = tauberian_ratio(problem, e, lambda);
          json di = instance(nw.name, e);
          di["lambda"] = lambda;
          di["ratio"] = ratio;
          di["bound"] = bound;
          bool ok = leq_tol(ratio, bound, c_.tol);
          if (!ok) {
            di["escalated"] = "weak-type chain failed in the grid model";
            findings_.push_back(di);
          }
          record("weak_type_chain", ok, di);
        }
      }
    }
    rhi_checks(nw.name, w);
  }

  void rhi_checks(const std::string& name, const Weights& w) {
    for (int axis = 0; axis < w.grid().dim(); ++axis) {
      for (std::int64_t line = 0; line < line_count(w.grid(), axis); ++line) {
        Weights sl = slice_line(w, axis, line);
        const double s = domination_exponent(sl, 2.0);
        const double beta = std::max(1.0, 1.0 / s);
        std::vector<double> rs;
        if (beta == 1.0) {
          rs = {1.25, 1.5, 2.0, 3.0, 5.0};
        } else {
          const double span = beta / (beta - 1.0) - 1.0;
          for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) rs.push_back(1.0 + f * span);
        }
        for (double r : rs) {
          double constant = rhi_constant_from_domination(2.0, beta, r);
          auto rep = rhi_verify(sl, r, constant);
          json d{{"weight", name},
                 {"cells", sl.grid().cell_count()},
                 {"axis", axis},
                 {"line", line},
                 {"r", r},
                 {"beta", beta},
                 {"worst_ratio", rep.worst_ratio},
                 {"constant", constant}};
          record("reverse_holder", leq_tol(rep.worst_ratio, constant, c_.tol), d);
        }
      }
    }
  }

  void point_mass_checks() {
    std::vector<double> alphas = {0.55, 0.65, 0.75, 0.85, 0.95};
    for (int t = 0; t < 4; ++t) {
      std::vector<Atom> atoms;
      std::lognormal_distribution<double> mass(0.0, 1.0);
      std::vector<double> xs(8);
      for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i) * 1.5 + t;
      std::shuffle(xs.begin(), xs.end(), rng_);
      for (double x : xs) atoms.push_back({{x}, mass(rng_)});
      PointMassMeasure mu(atoms);
      for (double gamma : {0.0, 0.3}) {
        auto problem = TauberianProblem::point_mass(mu, gamma);
        auto est = tauberian_exhaustive_sweep(problem, alphas);
        for (std::size_t i = 0; i < est.size(); ++i) {
          double bound = measure_1d_bound(alphas[i], gamma);
          json d = instance("point-mass", est[i].witness);
          d["alpha"] = alphas[i];
          d["gamma"] = gamma;
          d["constant"] = est[i].lower_bound;
          d["bound"] = bound;
          record("measure_1d_point_mass", leq_tol(est[i].lower_bound, bound, c_.tol), d);

          // The atom-run operator agrees with the grid form.
          auto sorted = mu.sorted_1d();
          std::vector<bool> in_e(sorted.size());
          for (std::size_t k = 0; k < in_e.size(); ++k)
            in_e[k] = est[i].witness.contains(static_cast<std::int64_t>(k));
          auto runs = point_mass_max_level_set_1d(sorted, in_e, gamma, alphas[i]);
          CellSet grid_level = tauberian_level_set(problem, est[i].witness, alphas[i]);
          bool same = true;
          for (std::size_t k = 0; k < runs.size(); ++k)
            same &= runs[k] == grid_level.contains(static_cast<std::int64_t>(k));
          record("point_mass_level_set_agreement", same, d);
        }
      }
    }
  }

  void two_dimensional(const NamedWeight& nw) {
    const Weights& w = nw.w;
    const Grid& g = w.grid();
    const double s = certified_exponent(w);
    const double s_paper = 1.0 / (4.0 * ap_star(w, kInfinity));
    soft({{"check", "certified_exponent_vs_ainfty"},
          {"weight", nw.name},
          {"grid", g.sizes()},
          {"s_star", s},
          {"paper_exponent", s_paper},
          {"holds", s >= s_paper}});

    const double k2 = ap_rec(w, 2.0);
    for (int k = 0; k < 10; ++k) {
      CellSet e = sample_set(g, rng_);
      auto ind = ScalarField<double>::indicator(e);
      auto composed = composed_max(ind, {0, 1});
      for (double alpha1 : alpha_list()) {
        // Iterated directional operators with the alpha schedule.
        if (4 * std::pow(1 - alpha1, s) < 1) {
          auto ib = iter_bound(alpha1, 2, s);
          const double alpha2 = ib.schedule.alphas[1];
          CellSet level = threshold_set(composed, alpha2);
          bool ok = measure_bound_holds(w, level, e, ib.bound, [&] {
            Rational a1 = to_rational(alpha1);
            Rational a2 = Rational(1) - (Rational(1) - a1) * (Rational(1) - a1);
            auto iq = ScalarField<Rational>::indicator(e);
            return threshold_set(composed_max(iq, {0, 1}), a2);
          });
          json d = instance(nw.name, e);
          d["alpha1"] = alpha1;
          d["bound"] = ib.bound;
          record("iterated_directional", ok, d);
        }
        // Strong operator.
        const double alpha = alpha1;
        if (strong_bound_valid(alpha, 2, s)) {
          double bound = strong_bound(alpha, 2, s);
          CellSet level = strong_level_set<double>(e, alpha);
          bool ok = measure_bound_holds(w, level, e, bound, [&] {
            return strong_level_set<Rational>(e, to_rational(alpha));
          });
          json d = instance(nw.name, e);
          d["alpha"] = alpha;
          d["bound"] = bound;
          record("strong_certified", ok, d);
        }
      }

      // Pointwise M_S <= M_0 M_1, exactly.
      auto iq = ScalarField<Rational>::indicator(e);
      auto ms = strong_max_field(iq);
      auto mm = composed_max(iq, {0, 1});
      bool pointwise = true;
      for (std::int64_t i = 0; i < g.cell_count(); ++i) pointwise &= ms[i] <= mm[i];
      record("strong_below_composed", pointwise, instance(nw.name, e));

      // Weighted-to-unweighted level-set inclusion, p = 2.
      for (double u : {0.2, 0.5, 0.8, 0.95}) {
        const double alpha = 1.0 - u / k2;
        if (!(alpha > 1.0 - 1.0 / k2) || !(alpha < 1)) continue;
        const double t = mw_reduction_threshold(alpha, 2.0, k2);
        CellSet lhs = weighted_strong_level_set<double>(e, w, alpha);
        bool ok = lhs.subset_of(strong_level_set<double>(e, t));
        if (!ok) ok = exact_inclusion(w, e, alpha);
        json d = instance(nw.name, e);
        d["alpha"] = alpha;
        d["threshold"] = t;
        d["ap_rec"] = k2;
        record("weighted_level_set_inclusion", ok, d);
      }
    }

    // Search lower bounds against the certified and paper-form bounds.
    auto problem = TauberianProblem::strong(w);
    for (double alpha : {0.9, 0.99, 0.999}) {
      auto est = tauberian_search(problem, alpha, c_.budget, seed_);
      json d = instance(nw.name, est.witness);
      d["alpha"] = alpha;
      d["lower_bound"] = est.lower_bound;
      if (strong_bound_valid(alpha, 2, s)) {
        d["bound"] = strong_bound(alpha, 2, s);
        record("search_below_certified", leq_tol(est.lower_bound, d["bound"], c_.tol), d);
      }
      json f{{"check", "search_vs_paper_bound"},
             {"weight", nw.name},
             {"alpha", alpha},
             {"lower_bound", est.lower_bound},
             {"paper_exponent", s_paper}};
      if (strong_bound_valid(alpha, 2, s_paper)) {
        double b = strong_bound(alpha, 2, s_paper);
        f["paper_bound"] = b;
        f["holds"] = est.lower_bound <= b;
      } else {
        f["paper_bound"] = nullptr;
        f["status"] = "out of range";
      }
      soft(f);
    }

    // Slice constants never exceed box constants.
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
      double star = ap_star(w, p), rec = ap_rec(w, p);
      record("ap_star_below_ap_rec", leq_tol(star, rec, c_.tol),
             {{"weight", nw.name}, {"cells", g.cell_count()}, {"p", p},
              {"ap_star", star}, {"ap_rec", rec}});
    }
    rhi_checks(nw.name, w);
  }

  // {M^w 1_E > alpha} ⊆ {M 1_E > 1 - sqrt(K(1-alpha))} decided in rationals
  // with the exact K, squaring away the root.
  bool exact_inclusion(const Weights& w, const CellSet& e, double alpha) {
    const Grid& g = w.grid();
    auto wq = w.cast<Rational>();
    Rational aq = to_rational(alpha);
    Rational kq = exact_a2_rec(w);
    CellSet lhs = weighted_strong_level_set<Rational>(e, wq, aq);
    Rational rhs_sq = kq * (Rational(1) - aq);
    auto ind = ScalarField<Rational>::indicator(e);
    SummedVolume<Rational> sv(g, ind.values());
    BoxPainter painter(g);
    for_each_box(g, [&](const GridBox& b) {
      Rational miss = Rational(1) - sv.sum(b) / Rational(b.volume());
      if (miss * miss < rhs_sq) painter.paint(b);
    });
    return lhs.subset_of(painter.finish());
  }

  void tensor_checks() {
    std::lognormal_distribution<double> f(0.0, 1.0);
    for (int t = 0; t < 3; ++t) {
      TensorSpec spec;
      spec.factors.resize(2);
      for (auto& v : spec.factors)
        for (int i = 0; i < 5; ++i) v.push_back(f(rng_));
      Grid g = tensor_grid(spec);
      Weights w = generate_weight(spec, g);
      Weights u = Weights::from_vector(Grid({5}), spec.factors[0]);
      Weights v = Weights::from_vector(Grid({5}), spec.factors[1]);
      for (double p : {1.0, 1.5, 2.0, 4.0}) {
        double rec = ap_rec(w, p);
        double prod = p == 1.0 ? a1_constant_1d(u) * a1_constant_1d(v)
                               : ap_constant_1d(u, p) * ap_constant_1d(v, p);
        json d{{"weight", to_string(WeightSpec(spec))},
               {"cells", g.cell_count()},
               {"p", p},
               {"ap_rec", rec},
               {"product", prod}};
        record("tensor_identity", std::abs(rec - prod) <= c_.tol * prod, d);
      }
    }
  }

  void covering_checks() {
    const Grid g({16, 16});
    for (const auto& nw : generator_suite(g, seed_)) {
      const double s = certified_exponent(nw.w);
      const double k1 = ap_rec(nw.w, 1.0), k2 = ap_rec(nw.w, 2.0);
      for (std::uint64_t f = 0; f < 3; ++f) {
        auto rects = random_rect_family(g, 40, 8, seed_ + f);
        for (double delta : {0.5, 0.1, 0.01}) {
          auto sel = cf_select(rects, nw.w, delta);
          json d{{"weight", nw.name},
                 {"cells", g.cell_count()},
                 {"family_seed", seed_ + f},
                 {"delta", delta}};
          record("covering_inclusion", verify_inclusion(sel).holds, d);
          record("covering_sparsity_p1",
                 verify_sparsity(sel, nw.w, 1.0, k1, c_.tol).holds, d);
          record("covering_sparsity_p2",
                 verify_sparsity(sel, nw.w, 2.0, k2, c_.tol).holds, d);
          auto ret = verify_mass_retention(sel, nw.w, s, 2, c_.tol);
          if (ret.in_range) record("covering_retention", ret.holds, d);
        }
      }
    }
  }

  void counterexample_checks() {
    double prev = 0;
    for (int n : {100, 1000, 10000}) {
      double v = dirac_counterexample(n, 0.9).lower_bound;
      record("counterexample_increasing", v > prev,
             {{"atoms", n}, {"cells", n + 1}, {"value", v}});
      prev = v;
    }
    long double h = 0;
    for (int j = 10; j <= 10000; ++j) h += 1.0L / j;
    double oracle = static_cast<double>(1.0L + h);
    record("counterexample_harmonic_oracle", std::abs(prev - oracle) <= 1e-6,
           {{"atoms", 10000}, {"cells", 10001}, {"value", prev}, {"oracle", oracle}});
  }

  const RunConfig& c_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  int n1_ = 12;
  std::vector<int> g2_{6, 6};
  json hard_ = json::object();
  json soft_ = json::array();
  json findings_ = json::array();
  json violations_ = json::array();
};

}  // namespace

json run_verification(const RunConfig& c) {
  if (!c.seed) throw UsageError("verify: --seed is required");
  if (c.grid.size() > 2) throw UsageError("verify: --grid takes 1 or 2 sizes");
  if (c.budget < 1) throw UsageError("--budget must be >= 1");
  return Verifier(c).run();
}

}  // namespace solyanik
