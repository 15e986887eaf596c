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

#include "solyanik/maximal.h"

namespace solyanik {

BoxPainter::BoxPainter(const Grid& grid)
    : grid_(grid),
      e0_(grid.size(0) + 1),
      e1_(grid.size(1) + 1),
      e2_(grid.size(2) + 1),
      diff_(static_cast<std::size_t>(std::int64_t{e0_} * e1_ * e2_), 0) {}

void BoxPainter::paint(const GridBox& b) {
  const auto& l = b.lo;
  const auto& h = b.hi;
  diff_[at(l[0], l[1], l[2])] += 1;
  diff_[at(h[0], l[1], l[2])] -= 1;
  diff_[at(l[0], h[1], l[2])] -= 1;
  diff_[at(l[0], l[1], h[2])] -= 1;
  diff_[at(h[0], h[1], l[2])] += 1;
  diff_[at(h[0], l[1], h[2])] += 1;
  diff_[at(l[0], h[1], h[2])] += 1;
  diff_[at(h[0], h[1], h[2])] -= 1;
}

CellSet BoxPainter::finish() const {
  std::vector<std::int64_t> acc(diff_.begin(), diff_.end());
  for (int i = 1; i < e0_; ++i)
    for (int j = 0; j < e1_; ++j)
      for (int k = 0; k < e2_; ++k) acc[at(i, j, k)] += acc[at(i - 1, j, k)];
  for (int i = 0; i < e0_; ++i)
    for (int j = 1; j < e1_; ++j)
      for (int k = 0; k < e2_; ++k) acc[at(i, j, k)] += acc[at(i, j - 1, k)];
  for (int i = 0; i < e0_; ++i)
    for (int j = 0; j < e1_; ++j)
      for (int k = 1; k < e2_; ++k) acc[at(i, j, k)] += acc[at(i, j, k - 1)];
  CellSet out(grid_);
  for (int i = 0; i < grid_.size(0); ++i)
    for (int j = 0; j < grid_.size(1); ++j)
      for (int k = 0; k < grid_.size(2); ++k)
        if (acc[at(i, j, k)] > 0) out.insert(grid_.index({i, j, k}));
  return out;
}

std::vector<bool> point_mass_max_level_set_1d(const PointMassMeasure& mu,
                                              const std::vector<bool>& in_e,
                                              double gamma, double alpha) {
  if (mu.size() == 0)
    throw std::invalid_argument("point_mass_max_level_set_1d: empty measure");
  if (mu.dim() != 1)
    throw std::invalid_argument("point_mass_max_level_set_1d: measure not 1D");
  if (in_e.size() != mu.size())
    throw std::invalid_argument("point_mass_max_level_set_1d: size mismatch");
  if (!(gamma >= 0 && gamma < alpha))
    throw std::invalid_argument("point_mass_max_level_set_1d: need 0 <= gamma < alpha");
  const auto& atoms = mu.atoms();
  for (std::size_t i = 1; i < atoms.size(); ++i)
    if (!(atoms[i - 1].position[0] < atoms[i].position[0]))
      throw std::invalid_argument(
          "point_mass_max_level_set_1d: atoms must be sorted by coordinate");
  std::vector<double> numer(atoms.size()), denom(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    denom[i] = atoms[i].mass;
    numer[i] = atoms[i].mass * (in_e[i] ? 1.0 : gamma);
  }
  auto m = interval_max_1d<double>(numer, denom);
  std::vector<bool> out(atoms.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] > alpha;
  return out;
}

}  // namespace solyanik
