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

#ifndef SOLYANIK_MAXIMAL_H_
#define SOLYANIK_MAXIMAL_H_

// Discrete maximal operators over grid-aligned boxes: directional M_j,
// compositions M_B, the strong operator M_S, its weighted form M_S^w and the
// one-dimensional point-mass operator M^mu, plus their strict superlevel
// sets {M f > alpha}.
//
// Every routine is templated on the scalar. With Scalar = Rational all
// comparisons are exact.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "solyanik/exact.h"
#include "solyanik/lattice.h"

namespace solyanik {

// Summed-volume table; box sums in O(1) after O(#cells) setup.
template <class Scalar>
class SummedVolume {
 public:
  SummedVolume(const Grid& grid, const FlatArray<Scalar>& values)
      : grid_(grid),
        e0_(grid.size(0) + 1),
        e1_(grid.size(1) + 1),
        e2_(grid.size(2) + 1),
        table_(FlatArray<Scalar>::Zero(std::int64_t{e0_} * e1_ * e2_)) {
    for (int i = 0; i < grid.size(0); ++i)
      for (int j = 0; j < grid.size(1); ++j)
        for (int k = 0; k < grid.size(2); ++k)
          table_[at(i + 1, j + 1, k + 1)] = values[grid.index({i, j, k})];
    for (int i = 1; i < e0_; ++i)
      for (int j = 0; j < e1_; ++j)
        for (int k = 0; k < e2_; ++k) table_[at(i, j, k)] += table_[at(i - 1, j, k)];
    for (int i = 0; i < e0_; ++i)
      for (int j = 1; j < e1_; ++j)
        for (int k = 0; k < e2_; ++k) table_[at(i, j, k)] += table_[at(i, j - 1, k)];
    for (int i = 0; i < e0_; ++i)
      for (int j = 0; j < e1_; ++j)
        for (int k = 1; k < e2_; ++k) table_[at(i, j, k)] += table_[at(i, j, k - 1)];
  }

  Scalar sum(const GridBox& b) const {
    const auto& l = b.lo;
    const auto& h = b.hi;
    return table_[at(h[0], h[1], h[2])] - table_[at(l[0], h[1], h[2])] -
           table_[at(h[0], l[1], h[2])] - table_[at(h[0], h[1], l[2])] +
           table_[at(l[0], l[1], h[2])] + table_[at(l[0], h[1], l[2])] +
           table_[at(h[0], l[1], l[2])] - table_[at(l[0], l[1], l[2])];
  }
  Scalar average(const GridBox& b) const {
    return sum(b) / Scalar(b.volume());
  }
  const Grid& grid() const { return grid_; }

 private:
  std::int64_t at(int i, int j, int k) const {
    return (std::int64_t{i} * e1_ + j) * e2_ + k;
  }

  Grid grid_;
  int e0_, e1_, e2_;
  FlatArray<Scalar> table_;
};

// Marks the union of many boxes with a d-dimensional difference array.
class BoxPainter {
 public:
  explicit BoxPainter(const Grid& grid);
  void paint(const GridBox& b);
  CellSet finish() const;

 private:
  std::int64_t at(int i, int j, int k) const {
    return (std::int64_t{i} * e1_ + j) * e2_ + k;
  }
  Grid grid_;
  int e0_, e1_, e2_;
  std::vector<std::int32_t> diff_;
};

template <class Scalar>
Scalar box_average(const ScalarField<Scalar>& f, const GridBox& box) {
  return SummedVolume<Scalar>(f.grid(), f.values()).average(box);
}

// One-dimensional interval maximal function of numer/denom: at each position
// x, the max over intervals I containing x of numer(I) / denom(I). An empty
// `denom` means the counting measure. O(n^2).
template <class Scalar>
std::vector<Scalar> interval_max_1d(std::span<const Scalar> numer,
                                    std::span<const Scalar> denom = {}) {
  const std::size_t n = numer.size();
  const bool lebesgue = denom.empty();
  std::vector<Scalar> pn(n + 1, Scalar(0)), pd(n + 1, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    pn[i + 1] = pn[i] + numer[i];
    pd[i + 1] = pd[i] + (lebesgue ? Scalar(1) : denom[i]);
  }
  std::vector<std::optional<Scalar>> best(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::optional<Scalar> running;
    for (std::size_t b = n; b > a; --b) {
      Scalar r = (pn[b] - pn[a]) / (pd[b] - pd[a]);
      if (!running || r > *running) running = r;
      auto& slot = best[b - 1];
      if (!slot || *running > *slot) slot = *running;
    }
  }
  std::vector<Scalar> out;
  out.reserve(n);
  for (auto& v : best) out.push_back(*v);
  return out;
}

// M_j f: along `axis`, the max over grid intervals containing each cell of
// the interval average of f.
template <class Scalar>
ScalarField<Scalar> directional_max(const ScalarField<Scalar>& f, int axis) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument("directional_max: axis out of range");
  ScalarField<Scalar> out = f;
  std::vector<Scalar> line(static_cast<std::size_t>(g.size(axis)));
  for (std::int64_t l = 0; l < line_count(g, axis); ++l) {
    auto cells = line_cells(g, axis, l);
    for (std::size_t t = 0; t < cells.size(); ++t) line[t] = f[cells[t]];
    auto m = interval_max_1d<Scalar>(line);
    for (std::size_t t = 0; t < cells.size(); ++t) out[cells[t]] = m[t];
  }
  return out;
}

// M_B = M_{b_1} ... M_{b_k}: applied right to left. Repeated axes allowed.
template <class Scalar>
ScalarField<Scalar> composed_max(const ScalarField<Scalar>& f,
                                 std::span<const int> axes) {
  if (axes.empty()) throw std::invalid_argument("composed_max: empty axis list");
  ScalarField<Scalar> out = f;
  for (auto it = axes.rbegin(); it != axes.rend(); ++it)
    out = directional_max(out, *it);
  return out;
}

template <class Scalar>
ScalarField<Scalar> composed_max(const ScalarField<Scalar>& f,
                                 std::initializer_list<int> axes) {
  return composed_max(f, std::span<const int>(axes.begin(), axes.size()));
}

// {x : f(x) > alpha}.
template <class Scalar>
CellSet threshold_set(const ScalarField<Scalar>& f, const Scalar& alpha) {
  CellSet s(f.grid());
  for (std::int64_t i = 0; i < f.grid().cell_count(); ++i)
    if (f[i] > alpha) s.insert(i);
  return s;
}

// Union of all boxes R with numer(R) / denom(R) > alpha. An empty `denom`
// means the counting measure. O(#boxes + #cells).
template <class Scalar>
CellSet ratio_level_set(const Grid& grid, const FlatArray<Scalar>& numer,
                        const FlatArray<Scalar>* denom, const Scalar& alpha) {
  SummedVolume<Scalar> sn(grid, numer);
  std::optional<SummedVolume<Scalar>> sd;
  if (denom) sd.emplace(grid, *denom);
  BoxPainter painter(grid);
  for_each_box(grid, [&](const GridBox& b) {
    Scalar d = sd ? sd->sum(b) : Scalar(b.volume());
    if (ratio_exceeds(sn.sum(b), d, alpha)) painter.paint(b);
  });
  return painter.finish();
}

// Full field x -> max over boxes R containing x of numer(R) / denom(R).
// Costs O(sum over boxes of |R|); meant for small grids.
template <class Scalar>
ScalarField<Scalar> ratio_max_field(const Grid& grid,
                                    const FlatArray<Scalar>& numer,
                                    const FlatArray<Scalar>* denom) {
  SummedVolume<Scalar> sn(grid, numer);
  std::optional<SummedVolume<Scalar>> sd;
  if (denom) sd.emplace(grid, *denom);
  std::vector<std::optional<Scalar>> best(
      static_cast<std::size_t>(grid.cell_count()));
  for_each_box(grid, [&](const GridBox& b) {
    Scalar d = sd ? sd->sum(b) : Scalar(b.volume());
    Scalar r = sn.sum(b) / d;
    for_each_cell(grid, b, [&](std::int64_t i) {
      auto& slot = best[static_cast<std::size_t>(i)];
      if (!slot || r > *slot) slot = r;
    });
  });
  FlatArray<Scalar> v(grid.cell_count());
  for (std::int64_t i = 0; i < grid.cell_count(); ++i) v[i] = *best[i];
  return ScalarField<Scalar>(grid, std::move(v));
}

// M_S f as a full field.
template <class Scalar>
ScalarField<Scalar> strong_max_field(const ScalarField<Scalar>& f) {
  return ratio_max_field<Scalar>(f.grid(), f.values(), nullptr);
}

// {x : M_S 1_E(x) > alpha}.
template <class Scalar = double>
CellSet strong_level_set(const CellSet& e, const Scalar& alpha) {
  if (e.empty()) throw std::invalid_argument("strong_level_set: E is empty");
  auto ind = ScalarField<Scalar>::indicator(e);
  return ratio_level_set<Scalar>(e.grid(), ind.values(), nullptr, alpha);
}

// {x : M_S^w 1_E(x) > alpha}, averages taken against w.
template <class Scalar = double>
CellSet weighted_strong_level_set(const CellSet& e,
                                  const WeightField<Scalar>& w,
                                  const Scalar& alpha) {
  if (e.empty())
    throw std::invalid_argument("weighted_strong_level_set: E is empty");
  if (!(e.grid() == w.grid()))
    throw std::invalid_argument("weighted_strong_level_set: grid mismatch");
  FlatArray<Scalar> numer(w.values().size());
  for (std::int64_t i = 0; i < numer.size(); ++i)
    numer[i] = e.contains(i) ? w[i] : Scalar(0);
  return ratio_level_set<Scalar>(e.grid(), numer, &w.values(), alpha);
}

// f_{E,gamma} = 1_E + gamma 1_{E^c}.
template <class Scalar = double>
struct PerturbedIndicator {
  CellSet set;
  Scalar gamma = 0;

  ScalarField<Scalar> field() const {
    if (!(gamma >= 0 && gamma < 1))
      throw std::invalid_argument("PerturbedIndicator: gamma must lie in [0,1)");
    return ScalarField<Scalar>::indicator(set, gamma);
  }
};

// {x : M_1 f_{E,gamma}(x) > alpha} on a one-dimensional grid.
template <class Scalar = double>
CellSet perturbed_level_set_1d(const PerturbedIndicator<Scalar>& f,
                               const Scalar& alpha) {
  if (f.set.grid().dim() != 1)
    throw std::invalid_argument("perturbed_level_set_1d: grid must be 1D");
  if (!(f.gamma < alpha))
    throw std::invalid_argument("perturbed_level_set_1d: need gamma < alpha");
  auto field = f.field();
  std::span<const Scalar> v(field.values().data(), field.values().size());
  auto m = interval_max_1d<Scalar>(v);
  CellSet s(f.set.grid());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > alpha) s.insert(static_cast<std::int64_t>(i));
  return s;
}

// M^mu level set on a one-dimensional point-mass measure. Atoms must be
// sorted by coordinate; `in_e[i]` marks membership of atom i. Intervals of
// the line meet the atoms in contiguous runs, so the sup runs over those.
std::vector<bool> point_mass_max_level_set_1d(const PointMassMeasure& mu,
                                              const std::vector<bool>& in_e,
                                              double gamma, double alpha);

}  // namespace solyanik

#endif  // SOLYANIK_MAXIMAL_H_
