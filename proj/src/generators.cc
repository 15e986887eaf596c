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

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "solyanik/weights.h"

namespace solyanik {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("weight spec: bad number '" + s + "'");
  }
  if (used != s.size())
    throw std::invalid_argument("weight spec: bad number '" + s + "'");
  return v;
}

std::vector<double> to_numbers(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split(s, ',')) out.push_back(to_number(t));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + shortest_repr(v[i]);
  return s;
}

void require_positive(double x, const char* what) {
  if (!(x > 0) || !std::isfinite(x))
    throw std::invalid_argument(std::string("weight spec: ") + what +
                                " must be positive");
}

double per_axis(const std::vector<double>& v, int axis) {
  return v.size() == 1 ? v[0] : v.at(static_cast<std::size_t>(axis));
}

}  // namespace

WeightSpec parse_weight_spec(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.empty()) throw std::invalid_argument("weight spec: empty");
  const std::string& kind = parts[0];
  auto need = [&](std::size_t n) {
    if (parts.size() != n)
      throw std::invalid_argument("weight spec: wrong field count in '" + text + "'");
  };
  if (kind == "constant") {
    need(2);
    return ConstantSpec{to_number(parts[1])};
  }
  if (kind == "checkerboard") {
    need(2);
    return CheckerboardSpec{to_number(parts[1])};
  }
  if (kind == "power") {
    need(3);
    return PowerSpec{to_numbers(parts[1]), to_numbers(parts[2])};
  }
  if (kind == "tensor") {
    need(2);
    TensorSpec t;
    for (const auto& f : split(parts[1], ';')) t.factors.push_back(to_numbers(f));
    return t;
  }
  if (kind == "lognormal") {
    need(3);
    return LognormalSpec{to_number(parts[1]),
                         static_cast<std::uint64_t>(std::stoull(parts[2]))};
  }
  throw std::invalid_argument("weight spec: unknown kind '" + kind + "'");
}

std::string to_string(const WeightSpec& spec) {
  struct Visitor {
    std::string operator()(const ConstantSpec& s) const {
      return "constant:" + shortest_repr(s.c);
    }
    std::string operator()(const CheckerboardSpec& s) const {
      return "checkerboard:" + shortest_repr(s.t);
    }
    std::string operator()(const PowerSpec& s) const {
      return "power:" + join(s.exponent) + ":" + join(s.center);
    }
    std::string operator()(const TensorSpec& s) const {
      std::string out = "tensor:";
      for (std::size_t i = 0; i < s.factors.size(); ++i)
        out += (i ? ";" : "") + join(s.factors[i]);
      return out;
    }
    std::string operator()(const LognormalSpec& s) const {
      return "lognormal:" + shortest_repr(s.sigma) + ":" + std::to_string(s.seed);
    }
  };
  return std::visit(Visitor{}, spec);
}

Grid tensor_grid(const TensorSpec& spec) {
  std::vector<int> sizes;
  for (const auto& f : spec.factors) sizes.push_back(static_cast<int>(f.size()));
  return Grid(sizes);
}

Weights generate_weight(const WeightSpec& spec, const Grid& grid) {
  const std::int64_t n = grid.cell_count();
  FlatArray<double> v(n);
  if (const auto* s = std::get_if<ConstantSpec>(&spec)) {
    require_positive(s->c, "constant");
    v.setConstant(s->c);
  } else if (const auto* s = std::get_if<CheckerboardSpec>(&spec)) {
    require_positive(s->t, "checkerboard t");
    for (std::int64_t i = 0; i < n; ++i) {
      Coords c = grid.coords(i);
      v[i] = (c[0] + c[1] + c[2]) % 2 ? s->t : 1.0;
    }
  } else if (const auto* s = std::get_if<PowerSpec>(&spec)) {
    auto fits = [&](const std::vector<double>& x) {
      return x.size() == 1 || x.size() == static_cast<std::size_t>(grid.dim());
    };
    if (!fits(s->exponent) || !fits(s->center))
      throw std::invalid_argument("weight spec: power needs 1 or dim entries");
    for (std::int64_t i = 0; i < n; ++i) {
      Coords c = grid.coords(i);
      double x = 1.0;
      for (int a = 0; a < grid.dim(); ++a)
        x *= std::pow(std::abs(c[a] + 0.5 - per_axis(s->center, a)),
                      per_axis(s->exponent, a));
      v[i] = x;
    }
  } else if (const auto* s = std::get_if<TensorSpec>(&spec)) {
    if (!(tensor_grid(*s) == grid))
      throw std::invalid_argument("weight spec: tensor factors do not match grid");
    for (const auto& f : s->factors)
      for (double x : f) require_positive(x, "tensor factor");
    for (std::int64_t i = 0; i < n; ++i) {
      Coords c = grid.coords(i);
      double x = 1.0;
      for (int a = 0; a < grid.dim(); ++a) x *= s->factors[a][c[a]];
      v[i] = x;
    }
  } else if (const auto* s = std::get_if<LognormalSpec>(&spec)) {
    if (!(s->sigma >= 0)) throw std::invalid_argument("weight spec: sigma < 0");
    std::mt19937_64 rng(s->seed);
    std::normal_distribution<double> z(0.0, 1.0);
    for (std::int64_t i = 0; i < n; ++i) v[i] = std::exp(s->sigma * z(rng));
  }
  for (std::int64_t i = 0; i < n; ++i)
    if (!(v[i] > 0) || !std::isfinite(v[i]))
      throw std::invalid_argument("weight spec: generated a nonpositive value");
  return Weights(grid, std::move(v));
}

}  // namespace solyanik
