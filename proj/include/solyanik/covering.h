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

#ifndef SOLYANIK_COVERING_H_
#define SOLYANIK_COVERING_H_

// Córdoba-Fefferman greedy selection of grid boxes and exact checks of its
// weighted guarantees.

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "solyanik/lattice.h"

namespace solyanik {

struct SelectionResult {
  Grid grid;
  double delta = 0.5;
  std::vector<GridBox> selected;
  std::vector<std::size_t> selected_index;  // positions in the input list
  std::vector<GridBox> rejected;
  std::vector<std::size_t> rejected_index;
  std::vector<CellSet> increments;  // selected[k] minus earlier selections
  CellSet selected_union;
  CellSet input_union;
};

// Greedy pass in input order. A box is kept iff its overlap with the union
// selected so far is at most (1 - delta)|R|; comparisons are exact in the
// decimal value of delta.
SelectionResult cf_select(const std::vector<GridBox>& rects, const Grid& grid,
                          double delta);
SelectionResult cf_select(const std::vector<GridBox>& rects, const Weights& w,
                          double delta);

// {x : M_S 1_E(x) > 1 - delta}, evaluated exactly in integers.
CellSet covering_level_set(const CellSet& e, double delta);

struct InclusionReport {
  bool holds = true;
  std::int64_t uncovered_cells = 0;
  std::optional<Coords> first_uncovered;
};
// Every cell of every rejected box lies in {M_S 1_{∪ selected} > 1 - delta}.
InclusionReport verify_inclusion(const SelectionResult& result);

struct SparsityReport {
  double p = 1;
  double k = 1;  // ap_rec(w, p)
  double sum_selected_weight = 0;
  double union_weight = 0;
  double bound = 0;  // k / delta^p * union_weight
  bool holds = true;
};
SparsityReport verify_sparsity(const SelectionResult& result, const Weights& w,
                               double p, double rel_tol = 1e-9);
// Same with K = ap_rec(w, p) supplied by the caller.
SparsityReport verify_sparsity(const SelectionResult& result, const Weights& w,
                               double p, double k, double rel_tol);

struct RetentionReport {
  bool in_range = false;  // 4 delta^{s/n} < 1
  double all_weight = 0;
  double selected_weight = 0;
  double ratio = 1;
  double bound = 0;  // strong_bound(1 - delta, n, s); 0 when out of range
  bool holds = true;  // meaningful only in range
};
RetentionReport verify_mass_retention(const SelectionResult& result,
                                      const Weights& w, double s, int n,
                                      double rel_tol = 1e-9);

// Seeded family of `count` boxes, side lengths up to `max_side` per axis.
std::vector<GridBox> random_rect_family(const Grid& grid, int count,
                                        int max_side, std::uint64_t seed);

// Boxes as lists of per-axis [lo, hi) pairs.
nlohmann::json rects_to_json(const std::vector<GridBox>& rects, int dim);
std::vector<GridBox> rects_from_json(const nlohmann::json& j, const Grid& grid);

nlohmann::json to_json(const SelectionResult& r);
nlohmann::json to_json(const InclusionReport& r);
nlohmann::json to_json(const SparsityReport& r);
nlohmann::json to_json(const RetentionReport& r);

}  // namespace solyanik

#endif  // SOLYANIK_COVERING_H_
