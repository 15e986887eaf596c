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

#ifndef SOLYANIK_LATTICE_H_
#define SOLYANIK_LATTICE_H_

// The discrete universe: unit-measure cells on a 1-, 2- or 3-dimensional
// grid, positive weights on those cells, cell sets, index boxes and
// point-mass measures.
//
// Grids are stored padded to three axes; unused trailing axes have extent 1,
// so a 2D grid of sizes {N0, N1} is laid out exactly like a row-major
// N0 x N1 array.

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "solyanik/exact.h"

namespace solyanik {

inline constexpr int kMaxDim = 3;
inline constexpr std::int64_t kDefaultCellCap = std::int64_t{1} << 20;

using Coords = std::array<int, kMaxDim>;

class Grid {
 public:
  Grid() : Grid(std::vector<int>{1}) {}
  explicit Grid(const std::vector<int>& sizes,
                std::int64_t cell_cap = kDefaultCellCap);

  int dim() const { return dim_; }
  // Extent of `axis`; 1 for padded axes (axis >= dim()).
  int size(int axis) const { return extents_[axis]; }
  const Coords& extents() const { return extents_; }
  std::vector<int> sizes() const;
  std::int64_t cell_count() const { return cells_; }
  std::int64_t stride(int axis) const { return strides_[axis]; }

  std::int64_t index(const Coords& c) const {
    return c[0] * strides_[0] + c[1] * strides_[1] + c[2];
  }
  Coords coords(std::int64_t idx) const;

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && extents_ == other.extents_;
  }

  std::string to_string() const;

 private:
  int dim_ = 1;
  Coords extents_{1, 1, 1};
  std::array<std::int64_t, kMaxDim> strides_{1, 1, 1};
  std::int64_t cells_ = 1;
};

// Half-open cell-index box [lo_j, hi_j) on every axis.
struct GridBox {
  Coords lo{0, 0, 0};
  Coords hi{1, 1, 1};

  static GridBox interval(int lo, int hi) { return {{lo, 0, 0}, {hi, 1, 1}}; }
  // Validates against `grid`; padded axes must be [0,1).
  static GridBox make(const Grid& grid, const std::vector<int>& lo,
                      const std::vector<int>& hi);

  std::int64_t volume() const {
    return std::int64_t{hi[0] - lo[0]} * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }
  int length(int axis) const { return hi[axis] - lo[axis]; }
  bool contains(const Coords& c) const {
    for (int a = 0; a < kMaxDim; ++a)
      if (c[a] < lo[a] || c[a] >= hi[a]) return false;
    return true;
  }
  bool valid_on(const Grid& grid) const;

  bool operator==(const GridBox&) const = default;
};

// Number of boxes on `grid`: prod_j N_j (N_j + 1) / 2.
std::int64_t box_count(const Grid& grid);

// Calls fn(box) once for every box of the grid. Order: lo/hi of axis 0
// outermost.
template <class Fn>
void for_each_box(const Grid& grid, Fn&& fn) {
  const Coords& n = grid.extents();
  GridBox b;
  for (b.lo[0] = 0; b.lo[0] < n[0]; ++b.lo[0])
    for (b.hi[0] = b.lo[0] + 1; b.hi[0] <= n[0]; ++b.hi[0])
      for (b.lo[1] = 0; b.lo[1] < n[1]; ++b.lo[1])
        for (b.hi[1] = b.lo[1] + 1; b.hi[1] <= n[1]; ++b.hi[1])
          for (b.lo[2] = 0; b.lo[2] < n[2]; ++b.lo[2])
            for (b.hi[2] = b.lo[2] + 1; b.hi[2] <= n[2]; ++b.hi[2]) fn(b);
}

std::vector<GridBox> enumerate_boxes(const Grid& grid);

// Calls fn(cell_index) for every cell of `box`.
template <class Fn>
void for_each_cell(const Grid& grid, const GridBox& box, Fn&& fn) {
  for (int i = box.lo[0]; i < box.hi[0]; ++i)
    for (int j = box.lo[1]; j < box.hi[1]; ++j) {
      std::int64_t base = i * grid.stride(0) + j * grid.stride(1);
      for (int k = box.lo[2]; k < box.hi[2]; ++k) fn(base + k);
    }
}

class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(const Grid& grid)
      : grid_(grid), bits_(static_cast<std::size_t>(grid.cell_count()), 0) {}

  static CellSet full(const Grid& grid);
  static CellSet from_indices(const Grid& grid,
                              std::span<const std::int64_t> idx);
  static CellSet from_coords(const Grid& grid,
                             const std::vector<Coords>& cells);
  static CellSet from_box(const Grid& grid, const GridBox& box);

  const Grid& grid() const { return grid_; }
  bool contains(std::int64_t idx) const { return bits_[idx] != 0; }
  void insert(std::int64_t idx) { bits_[idx] = 1; }
  void erase(std::int64_t idx) { bits_[idx] = 0; }
  void set(std::int64_t idx, bool on) { bits_[idx] = on ? 1 : 0; }

  std::int64_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::int64_t> members() const;
  // True iff every member of this set is in `other`.
  bool subset_of(const CellSet& other) const;
  CellSet complement() const;
  CellSet& operator|=(const CellSet& other);

  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const CellSet& other) const {
    return grid_ == other.grid_ && bits_ == other.bits_;
  }

 private:
  Grid grid_;
  std::vector<std::uint8_t> bits_;
};

std::int64_t measure(const CellSet& e);

template <class Scalar>
using FlatArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

// One real value per cell, no sign constraint.
template <class Scalar = double>
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(const Grid& grid, FlatArray<Scalar> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.cell_count())
      throw std::invalid_argument("ScalarField: value count != cell count");
  }
  static ScalarField constant(const Grid& grid, const Scalar& c) {
    return ScalarField(grid, FlatArray<Scalar>::Constant(grid.cell_count(), c));
  }
  static ScalarField indicator(const CellSet& e, const Scalar& outside = 0) {
    FlatArray<Scalar> v(e.grid().cell_count());
    for (std::int64_t i = 0; i < v.size(); ++i)
      v[i] = e.contains(i) ? Scalar(1) : outside;
    return ScalarField(e.grid(), std::move(v));
  }

  const Grid& grid() const { return grid_; }
  const FlatArray<Scalar>& values() const { return values_; }
  FlatArray<Scalar>& values() { return values_; }
  const Scalar& operator[](std::int64_t i) const { return values_[i]; }
  Scalar& operator[](std::int64_t i) { return values_[i]; }
  const Scalar& at(const Coords& c) const { return values_[grid_.index(c)]; }

 private:
  Grid grid_;
  FlatArray<Scalar> values_;
};

// Strictly positive finite weight per cell.
template <class Scalar = double>
class WeightField {
 public:
  WeightField() = default;
  WeightField(const Grid& grid, FlatArray<Scalar> values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.cell_count())
      throw std::invalid_argument("WeightField: value count != cell count");
    for (std::int64_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] > 0) || !std::isfinite(to_double(values_[i])))
        throw std::invalid_argument(
            "WeightField: values must be strictly positive and finite");
    }
  }
  static WeightField constant(const Grid& grid, const Scalar& c) {
    return WeightField(grid, FlatArray<Scalar>::Constant(grid.cell_count(), c));
  }
  static WeightField from_vector(const Grid& grid,
                                 const std::vector<double>& v) {
    FlatArray<Scalar> a(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
      a[static_cast<Eigen::Index>(i)] = scalar_from_double<Scalar>(v[i]);
    return WeightField(grid, std::move(a));
  }

  const Grid& grid() const { return grid_; }
  const FlatArray<Scalar>& values() const { return values_; }
  const Scalar& operator[](std::int64_t i) const { return values_[i]; }
  const Scalar& at(const Coords& c) const { return values_[grid_.index(c)]; }

  template <class Target>
  WeightField<Target> cast() const {
    FlatArray<Target> a(values_.size());
    for (Eigen::Index i = 0; i < values_.size(); ++i)
      a[i] = convert<Target>(values_[i]);
    return WeightField<Target>(grid_, std::move(a));
  }

 private:
  template <class Target>
  static Target convert(const Scalar& x) {
    if constexpr (std::is_same_v<Target, Scalar>) {
      return x;
    } else if constexpr (std::is_same_v<Target, double>) {
      return to_double(x);
    } else {
      return scalar_from_double<Target>(x);
    }
  }

  Grid grid_;
  FlatArray<Scalar> values_;
};

using Weights = WeightField<double>;

template <class Scalar>
Scalar weighted_measure(const WeightField<Scalar>& w, const CellSet& e) {
  if (!(w.grid() == e.grid()))
    throw std::invalid_argument("weighted_measure: grid mismatch");
  Scalar total = 0;
  for (std::int64_t i = 0; i < w.grid().cell_count(); ++i)
    if (e.contains(i)) total += w[i];
  return total;
}

template <class Scalar>
Scalar box_weight(const WeightField<Scalar>& w, const GridBox& box) {
  Scalar total = 0;
  for_each_cell(w.grid(), box, [&](std::int64_t i) { total += w[i]; });
  return total;
}

// Number of transverse lines along `axis`, i.e. cell_count / N_axis.
std::int64_t line_count(const Grid& grid, int axis);

// Cell indices of the line along `axis` through transverse index `line`
// (lines numbered in row-major order of the remaining axes).
std::vector<std::int64_t> line_cells(const Grid& grid, int axis,
                                     std::int64_t line);

// 1D weight w_{x̄^j}: the values along `axis` through the cell whose other
// coordinates are `transverse` (dim - 1 entries, in axis order).
Weights slice(const Weights& w, int axis, const std::vector<int>& transverse);
Weights slice_line(const Weights& w, int axis, std::int64_t line);

// Atoms of a locally finite measure with finitely many point masses.
struct Atom {
  std::vector<double> position;
  double mass = 0;
};

class PointMassMeasure {
 public:
  PointMassMeasure() = default;
  explicit PointMassMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  int dim() const {
    return atoms_.empty() ? 0 : static_cast<int>(atoms_[0].position.size());
  }
  double total_mass() const;

  // 1D measures only: atoms sorted by coordinate.
  PointMassMeasure sorted_1d() const;
  // The sorted atom masses as a weight on a 1D grid of size(); contiguous
  // atom runs then correspond exactly to grid intervals.
  Weights as_1d_weight() const;

 private:
  std::vector<Atom> atoms_;
};

}  // namespace solyanik

#endif  // SOLYANIK_LATTICE_H_
