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

#include "solyanik/covering.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "solyanik/exact.h"
#include "solyanik/maximal.h"
#include "solyanik/tauberian.h"
#include "solyanik/weights.h"

namespace solyanik {
namespace {

using Int = __int128;

// delta = num / den in lowest terms, when both fit comfortably in 62 bits.
struct Fraction {
  Int num = 0;
  Int den = 1;
};

std::optional<Fraction> small_fraction(double delta) {
  Rational r = to_rational(delta);
  const auto& n = boost::multiprecision::numerator(r);
  const auto& d = boost::multiprecision::denominator(r);
  if (msb(d) > 61 || (n != 0 && msb(abs(n)) > 61)) return std::nullopt;
  return Fraction{static_cast<Int>(n.convert_to<std::int64_t>()),
                  static_cast<Int>(d.convert_to<std::int64_t>())};
}

// part >= delta * whole, exactly.
bool at_least_delta(std::int64_t part, std::int64_t whole, double delta) {
  if (auto f = small_fraction(delta)) return f->den * part >= f->num * whole;
  return Rational(part) >= to_rational(delta) * Rational(whole);
}

void check_delta(double delta) {
  if (!(delta > 0 && delta < 1))
    throw std::invalid_argument("covering: delta must lie in (0,1)");
}

}  // namespace

SelectionResult cf_select(const std::vector<GridBox>& rects, const Grid& grid,
                          double delta) {
  check_delta(delta);
  if (rects.empty()) throw std::invalid_argument("cf_select: empty input");
  for (const auto& r : rects)
    if (!r.valid_on(grid))
      throw std::invalid_argument("cf_select: box does not fit the grid");
  SelectionResult out;
  out.grid = grid;
  out.delta = delta;
  out.selected_union = CellSet(grid);
  out.input_union = CellSet(grid);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const GridBox& r = rects[i];
    std::int64_t fresh = 0;
    for_each_cell(grid, r, [&](std::int64_t c) {
      if (!out.selected_union.contains(c)) ++fresh;
      out.input_union.insert(c);
    });
    // |R ∩ U| <= (1 - delta)|R|  <=>  |R \ U| >= delta |R|.
    if (at_least_delta(fresh, r.volume(), delta)) {
      CellSet inc(grid);
      for_each_cell(grid, r, [&](std::int64_t c) {
        if (!out.selected_union.contains(c)) inc.insert(c);
      });
      out.selected_union |= inc;
      out.increments.push_back(std::move(inc));
      out.selected.push_back(r);
      out.selected_index.push_back(i);
    } else {
      out.rejected.push_back(r);
      out.rejected_index.push_back(i);
    }
  }
  return out;
}

SelectionResult cf_select(const std::vector<GridBox>& rects, const Weights& w,
                          double delta) {
  return cf_select(rects, w.grid(), delta);
}

CellSet covering_level_set(const CellSet& e, double delta) {
  check_delta(delta);
  const Grid& g = e.grid();
  if (e.empty()) throw std::invalid_argument("covering_level_set: E is empty");
  auto ind = ScalarField<double>::indicator(e);
  SummedVolume<double> counts(g, ind.values());
  const auto frac = small_fraction(delta);
  const Rational delta_q = to_rational(delta);
  BoxPainter painter(g);
  for_each_box(g, [&](const GridBox& b) {
    // |R ∩ E| > (1 - delta)|R|  <=>  |R \ E| < delta |R|.
    const auto in = static_cast<std::int64_t>(counts.sum(b));
    const std::int64_t out = b.volume() - in;
    bool hit = frac ? frac->den * out < frac->num * b.volume()
                    : Rational(out) < delta_q * Rational(b.volume());
    if (hit) painter.paint(b);
  });
  return painter.finish();
}

InclusionReport verify_inclusion(const SelectionResult& result) {
  InclusionReport rep;
  if (result.rejected.empty()) return rep;
  CellSet level = covering_level_set(result.selected_union, result.delta);
  for (const auto& r : result.rejected) {
    for_each_cell(result.grid, r, [&](std::int64_t c) {
      if (level.contains(c)) return;
      if (!rep.first_uncovered) rep.first_uncovered = result.grid.coords(c);
      ++rep.uncovered_cells;
    });
  }
  rep.holds = rep.uncovered_cells == 0;
  return rep;
}

SparsityReport verify_sparsity(const SelectionResult& result, const Weights& w,
                               double p, double rel_tol) {
  return verify_sparsity(result, w, p, ap_rec(w, p), rel_tol);
}

SparsityReport verify_sparsity(const SelectionResult& result, const Weights& w,
                               double p, double k, double rel_tol) {
  if (!(p >= 1) || !std::isfinite(p))
    throw std::invalid_argument("verify_sparsity: need 1 <= p < inf");
  if (!(w.grid() == result.grid))
    throw std::invalid_argument("verify_sparsity: grid mismatch");
  SparsityReport rep;
  rep.p = p;
  rep.k = k;
  for (const auto& r : result.selected) rep.sum_selected_weight += box_weight(w, r);
  rep.union_weight = weighted_measure(w, result.selected_union);
  rep.bound = k / std::pow(result.delta, p) * rep.union_weight;
  rep.holds = leq_tol(rep.sum_selected_weight, rep.bound, rel_tol);
  return rep;
}

RetentionReport verify_mass_retention(const SelectionResult& result,
                                      const Weights& w, double s, int n,
                                      double rel_tol) {
  if (!(w.grid() == result.grid))
    throw std::invalid_argument("verify_mass_retention: grid mismatch");
  RetentionReport rep;
  rep.all_weight = weighted_measure(w, result.input_union);
  rep.selected_weight = weighted_measure(w, result.selected_union);
  rep.ratio = rep.all_weight / rep.selected_weight;
  rep.in_range = strong_bound_valid(1.0 - result.delta, n, s);
  if (!rep.in_range) return rep;
  rep.bound = strong_bound(1.0 - result.delta, n, s);
  rep.holds = leq_tol(rep.all_weight, rep.bound * rep.selected_weight, rel_tol);
  return rep;
}

std::vector<GridBox> random_rect_family(const Grid& grid, int count,
                                        int max_side, std::uint64_t seed) {
  if (count < 1 || max_side < 1)
    throw std::invalid_argument("random_rect_family: need count, max_side >= 1");
  std::mt19937_64 rng(seed);
  std::vector<GridBox> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    GridBox b;
    for (int a = 0; a < grid.dim(); ++a) {
      int cap = std::min(max_side, grid.size(a));
      int len = std::uniform_int_distribution<int>(1, cap)(rng);
      int lo = std::uniform_int_distribution<int>(0, grid.size(a) - len)(rng);
      b.lo[a] = lo;
      b.hi[a] = lo + len;
    }
    out.push_back(b);
  }
  return out;
}

nlohmann::json rects_to_json(const std::vector<GridBox>& rects, int dim) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rects) {
    nlohmann::json box = nlohmann::json::array();
    for (int a = 0; a < dim; ++a) box.push_back({r.lo[a], r.hi[a]});
    j.push_back(box);
  }
  return j;
}

std::vector<GridBox> rects_from_json(const nlohmann::json& j, const Grid& grid) {
  if (!j.is_array()) throw std::invalid_argument("rects: expected a list of boxes");
  std::vector<GridBox> out;
  for (const auto& box : j) {
    if (!box.is_array() || static_cast<int>(box.size()) != grid.dim())
      throw std::invalid_argument("rects: each box needs one [lo,hi] per axis");
    std::vector<int> lo, hi;
    for (const auto& pair : box) {
      if (!pair.is_array() || pair.size() != 2)
        throw std::invalid_argument("rects: expected [lo,hi] pairs");
      lo.push_back(pair[0].get<int>());
      hi.push_back(pair[1].get<int>());
    }
    out.push_back(GridBox::make(grid, lo, hi));
  }
  return out;
}

nlohmann::json to_json(const SelectionResult& r) {
  nlohmann::json j;
  j["grid"] = r.grid.sizes();
  j["delta"] = r.delta;
  j["selected"] = rects_to_json(r.selected, r.grid.dim());
  j["selected_index"] = r.selected_index;
  j["rejected"] = rects_to_json(r.rejected, r.grid.dim());
  j["rejected_index"] = r.rejected_index;
  nlohmann::json inc = nlohmann::json::array();
  for (const auto& e : r.increments) inc.push_back(e.size());
  j["increment_sizes"] = inc;
  j["selected_union_size"] = r.selected_union.size();
  j["input_union_size"] = r.input_union.size();
  return j;
}

nlohmann::json to_json(const InclusionReport& r) {
  nlohmann::json j;
  j["holds"] = r.holds;
  j["uncovered_cells"] = r.uncovered_cells;
  if (r.first_uncovered) j["first_uncovered"] = *r.first_uncovered;
  return j;
}

nlohmann::json to_json(const SparsityReport& r) {
  return {{"p", r.p},
          {"ap_rec", r.k},
          {"sum_selected_weight", r.sum_selected_weight},
          {"union_weight", r.union_weight},
          {"bound", r.bound},
          {"holds", r.holds}};
}

nlohmann::json to_json(const RetentionReport& r) {
  nlohmann::json j{{"in_range", r.in_range},
                   {"all_weight", r.all_weight},
                   {"selected_weight", r.selected_weight},
                   {"ratio", r.ratio}};
  if (r.in_range) {
    j["bound"] = r.bound;
    j["holds"] = r.holds;
  } else {
    j["status"] = "out of range";
  }
  return j;
}

}  // namespace solyanik
