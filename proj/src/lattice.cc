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

#include "solyanik/lattice.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace solyanik {

Rational to_rational(double x) {
  if (!std::isfinite(x))
    throw std::invalid_argument("to_rational: non-finite value");
  const std::string s = shortest_repr(x);
  // Decompose [-]digits[.digits][e[+-]exp] into an integer mantissa and a
  // base-10 exponent.
  bool negative = false;
  std::string digits;
  int exp10 = 0;
  std::size_t i = 0;
  if (s[i] == '-') {
    negative = true;
    ++i;
  }
  bool after_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '.') {
      after_point = true;
    } else if (c == 'e' || c == 'E') {
      exp10 += std::stoi(s.substr(i + 1));
      break;
    } else {
      digits.push_back(c);
      if (after_point) --exp10;
    }
  }
  // A leading zero would make the string parse as octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  boost::multiprecision::mpz_int mant(digits);
  boost::multiprecision::mpz_int scale = 1;
  for (int k = 0; k < std::abs(exp10); ++k) scale *= 10;
  Rational r = exp10 >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  return negative ? Rational(-r) : r;
}

std::string shortest_repr(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Grid::Grid(const std::vector<int>& sizes, std::int64_t cell_cap) {
  if (sizes.empty() || sizes.size() > static_cast<std::size_t>(kMaxDim))
    throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
  dim_ = static_cast<int>(sizes.size());
  cells_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (sizes[a] < 1) throw std::invalid_argument("Grid: every size must be >= 1");
    extents_[a] = sizes[a];
    cells_ *= sizes[a];
    if (cells_ > cell_cap)
      throw std::invalid_argument("Grid: cell count exceeds cap of " +
                                  std::to_string(cell_cap));
  }
  strides_[2] = 1;
  strides_[1] = extents_[2];
  strides_[0] = std::int64_t{extents_[1]} * extents_[2];
}

std::vector<int> Grid::sizes() const {
  return std::vector<int>(extents_.begin(), extents_.begin() + dim_);
}

Coords Grid::coords(std::int64_t idx) const {
  Coords c;
  c[0] = static_cast<int>(idx / strides_[0]);
  idx %= strides_[0];
  c[1] = static_cast<int>(idx / strides_[1]);
  c[2] = static_cast<int>(idx % strides_[1]);
  return c;
}

std::string Grid::to_string() const {
  std::ostringstream os;
  for (int a = 0; a < dim_; ++a) os << (a ? "x" : "") << extents_[a];
  return os.str();
}

GridBox GridBox::make(const Grid& grid, const std::vector<int>& lo,
                      const std::vector<int>& hi) {
  if (lo.size() != static_cast<std::size_t>(grid.dim()) ||
      hi.size() != static_cast<std::size_t>(grid.dim()))
    throw std::invalid_argument("GridBox: bound count != grid dimension");
  GridBox b;
  for (int a = 0; a < grid.dim(); ++a) {
    b.lo[a] = lo[a];
    b.hi[a] = hi[a];
  }
  if (!b.valid_on(grid)) throw std::invalid_argument("GridBox: out of range");
  return b;
}

bool GridBox::valid_on(const Grid& grid) const {
  for (int a = 0; a < kMaxDim; ++a)
    if (lo[a] < 0 || lo[a] >= hi[a] || hi[a] > grid.size(a)) return false;
  return true;
}

std::int64_t box_count(const Grid& grid) {
  std::int64_t n = 1;
  for (int a = 0; a < kMaxDim; ++a) {
    std::int64_t k = grid.size(a);
    n *= k * (k + 1) / 2;
  }
  return n;
}

std::vector<GridBox> enumerate_boxes(const Grid& grid) {
  std::vector<GridBox> out;
  out.reserve(static_cast<std::size_t>(box_count(grid)));
  for_each_box(grid, [&](const GridBox& b) { out.push_back(b); });
  return out;
}

CellSet CellSet::full(const Grid& grid) {
  CellSet s(grid);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  return s;
}

CellSet CellSet::from_indices(const Grid& grid,
                              std::span<const std::int64_t> idx) {
  CellSet s(grid);
  for (std::int64_t i : idx) {
    if (i < 0 || i >= grid.cell_count())
      throw std::invalid_argument("CellSet: index out of range");
    s.insert(i);
  }
  return s;
}

CellSet CellSet::from_coords(const Grid& grid,
                             const std::vector<Coords>& cells) {
  CellSet s(grid);
  for (const Coords& c : cells) {
    for (int a = 0; a < kMaxDim; ++a)
      if (c[a] < 0 || c[a] >= grid.size(a))
        throw std::invalid_argument("CellSet: coordinate out of range");
    s.insert(grid.index(c));
  }
  return s;
}

CellSet CellSet::from_box(const Grid& grid, const GridBox& box) {
  if (!box.valid_on(grid)) throw std::invalid_argument("CellSet: bad box");
  CellSet s(grid);
  for_each_cell(grid, box, [&](std::int64_t i) { s.insert(i); });
  return s;
}

std::int64_t CellSet::size() const {
  return std::count(bits_.begin(), bits_.end(), std::uint8_t{1});
}

std::vector<std::int64_t> CellSet::members() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

bool CellSet::subset_of(const CellSet& other) const {
  if (!(grid_ == other.grid_)) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !other.bits_[i]) return false;
  return true;
}

CellSet CellSet::complement() const {
  CellSet c(grid_);
  for (std::size_t i = 0; i < bits_.size(); ++i) c.bits_[i] = bits_[i] ? 0 : 1;
  return c;
}

CellSet& CellSet::operator|=(const CellSet& other) {
  if (!(grid_ == other.grid_))
    throw std::invalid_argument("CellSet: grid mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

std::int64_t measure(const CellSet& e) { return e.size(); }

std::int64_t line_count(const Grid& grid, int axis) {
  return grid.cell_count() / grid.size(axis);
}

std::vector<std::int64_t> line_cells(const Grid& grid, int axis,
                                     std::int64_t line) {
  // Decompose `line` over the remaining padded axes in row-major order.
  Coords c{0, 0, 0};
  std::int64_t rest = line;
  for (int a = kMaxDim - 1; a >= 0; --a) {
    if (a == axis) continue;
    c[a] = static_cast<int>(rest % grid.size(a));
    rest /= grid.size(a);
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(grid.size(axis)));
  for (int t = 0; t < grid.size(axis); ++t) {
    c[axis] = t;
    out[t] = grid.index(c);
  }
  return out;
}

Weights slice_line(const Weights& w, int axis, std::int64_t line) {
  const Grid& g = w.grid();
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument("slice: axis out of range");
  if (line < 0 || line >= line_count(g, axis))
    throw std::invalid_argument("slice: transverse index out of range");
  auto cells = line_cells(g, axis, line);
  FlatArray<double> v(static_cast<Eigen::Index>(cells.size()));
  for (std::size_t t = 0; t < cells.size(); ++t) v[t] = w[cells[t]];
  return Weights(Grid({g.size(axis)}), std::move(v));
}

Weights slice(const Weights& w, int axis, const std::vector<int>& transverse) {
  const Grid& g = w.grid();
  if (axis < 0 || axis >= g.dim())
    throw std::invalid_argument("slice: axis out of range");
  if (transverse.size() != static_cast<std::size_t>(g.dim() - 1))
    throw std::invalid_argument("slice: transverse index has wrong length");
  std::int64_t line = 0;
  std::size_t k = 0;
  for (int a = 0; a < g.dim(); ++a) {
    if (a == axis) continue;
    int x = transverse[k++];
    if (x < 0 || x >= g.size(a))
      throw std::invalid_argument("slice: transverse index out of range");
    line = line * g.size(a) + x;
  }
  return slice_line(w, axis, line);
}

PointMassMeasure::PointMassMeasure(std::vector<Atom> atoms)
    : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    if (!(a.mass > 0) || !std::isfinite(a.mass))
      throw std::invalid_argument("PointMassMeasure: masses must be positive");
    if (a.position.size() != atoms_[0].position.size() || a.position.empty())
      throw std::invalid_argument("PointMassMeasure: inconsistent dimension");
  }
  std::vector<std::vector<double>> pos;
  for (const Atom& a : atoms_) pos.push_back(a.position);
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
    throw std::invalid_argument("PointMassMeasure: duplicate atom position");
}

double PointMassMeasure::total_mass() const {
  double t = 0;
  for (const Atom& a : atoms_) t += a.mass;
  return t;
}

PointMassMeasure PointMassMeasure::sorted_1d() const {
  if (dim() != 1)
    throw std::invalid_argument("PointMassMeasure: not one-dimensional");
  std::vector<Atom> s = atoms_;
  std::sort(s.begin(), s.end(), [](const Atom& a, const Atom& b) {
    return a.position[0] < b.position[0];
  });
  return PointMassMeasure(std::move(s));
}

Weights PointMassMeasure::as_1d_weight() const {
  if (atoms_.empty()) throw std::invalid_argument("PointMassMeasure: empty");
  PointMassMeasure s = sorted_1d();
  FlatArray<double> v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v[i] = s.atoms()[i].mass;
  return Weights(Grid({static_cast<int>(s.size())}), std::move(v));
}

}  // namespace solyanik
