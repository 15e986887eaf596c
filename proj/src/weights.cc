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

#include "solyanik/weights.h"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "solyanik/maximal.h"

namespace solyanik {
namespace {

void require_1d(const Weights& w, const char* what) {
  if (w.grid().dim() != 1)
    throw std::invalid_argument(std::string(what) + ": weight must be 1D");
}

std::vector<double> prefix(std::span<const double> v) {
  std::vector<double> p(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) p[i + 1] = p[i] + v[i];
  return p;
}

std::span<const double> as_span(const Weights& w) {
  return {w.values().data(), static_cast<std::size_t>(w.values().size())};
}

template <class Fn>
double max_over_slices(const Weights& w, Fn&& constant_1d) {
  double best = 1.0;
  for (int axis = 0; axis < w.grid().dim(); ++axis)
    for (std::int64_t line = 0; line < line_count(w.grid(), axis); ++line)
      best = std::max(best, constant_1d(slice_line(w, axis, line)));
  return best;
}

// Per-cell transform of w as a flat array.
template <class Fn>
FlatArray<double> transformed(const Weights& w, Fn&& fn) {
  FlatArray<double> out(w.values().size());
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = fn(w[i]);
  return out;
}

}  // namespace

double ap_constant_1d(const Weights& w, double p) {
  require_1d(w, "ap_constant_1d");
  if (!(p > 1) || std::isinf(p))
    throw std::invalid_argument("ap_constant_1d: need 1 < p < inf");
  const double q = -1.0 / (p - 1.0);
  std::vector<double> dual(static_cast<std::size_t>(w.values().size()));
  for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = std::pow(w[i], q);
  auto pw = prefix(as_span(w));
  auto pd = prefix(dual);
  const std::size_t n = dual.size();
  double best = 1.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b <= n; ++b) {
      double len = static_cast<double>(b - a);
      double v = (pw[b] - pw[a]) / len * std::pow((pd[b] - pd[a]) / len, p - 1.0);
      best = std::max(best, v);
    }
  return best;
}

double a1_constant_1d(const Weights& w) {
  require_1d(w, "a1_constant_1d");
  auto pw = prefix(as_span(w));
  const std::size_t n = pw.size() - 1;
  double best = 1.0;
  for (std::size_t a = 0; a < n; ++a) {
    double lo = w[a];
    for (std::size_t b = a + 1; b <= n; ++b) {
      lo = std::min(lo, w[b - 1]);
      best = std::max(best, (pw[b] - pw[a]) / static_cast<double>(b - a) / lo);
    }
  }
  return best;
}

double fujii_wilson_1d(const Weights& w) {
  require_1d(w, "fujii_wilson_1d");
  auto v = as_span(w);
  const std::size_t n = v.size();
  double best = 1.0;
  for (std::size_t a = 0; a < n; ++a) {
    double mass = 0;
    for (std::size_t b = a + 1; b <= n; ++b) {
      mass += v[b - 1];
      // Intervals leaving I only add zero mass, so M(w 1_I) on I is the
      // interval maximal function of the restriction.
      auto m = interval_max_1d<double>(v.subspan(a, b - a));
      double integral = 0;
      for (double x : m) integral += x;
      best = std::max(best, integral / mass);
    }
  }
  return best;
}

double ap_star(const Weights& w, double p) {
  if (p == 1.0) return max_over_slices(w, a1_constant_1d);
  if (std::isinf(p)) return max_over_slices(w, fujii_wilson_1d);
  return max_over_slices(w, [p](const Weights& s) { return ap_constant_1d(s, p); });
}

double ap_rec(const Weights& w, double p) {
  if (p == 1.0) return a1_rec(w);
  if (std::isinf(p)) return hruscev_rec(w);
  if (!(p > 1)) throw std::invalid_argument("ap_rec: need p >= 1");
  const double q = -1.0 / (p - 1.0);
  SummedVolume<double> sw(w.grid(), w.values());
  SummedVolume<double> sd(w.grid(),
                          transformed(w, [q](double x) { return std::pow(x, q); }));
  double best = 1.0;
  for_each_box(w.grid(), [&](const GridBox& b) {
    double vol = static_cast<double>(b.volume());
    best = std::max(best, sw.sum(b) / vol * std::pow(sd.sum(b) / vol, p - 1.0));
  });
  return best;
}

double a1_rec(const Weights& w) {
  const Grid& g = w.grid();
  const int n0 = g.size(0), n1 = g.size(1), n2 = g.size(2);
  SummedVolume<double> sw(g, w.values());
  double best = 1.0;
  std::vector<double> min0(static_cast<std::size_t>(n1) * n2);
  std::vector<double> min1(static_cast<std::size_t>(n2));
  GridBox b;
  // Box minima maintained incrementally as each upper bound grows.
  for (b.lo[0] = 0; b.lo[0] < n0; ++b.lo[0]) {
    std::fill(min0.begin(), min0.end(), kInfinity);
    for (b.hi[0] = b.lo[0] + 1; b.hi[0] <= n0; ++b.hi[0]) {
      for (int j = 0; j < n1; ++j)
        for (int k = 0; k < n2; ++k)
          min0[j * n2 + k] = std::min(min0[j * n2 + k], w.at({b.hi[0] - 1, j, k}));
      for (b.lo[1] = 0; b.lo[1] < n1; ++b.lo[1]) {
        std::fill(min1.begin(), min1.end(), kInfinity);
        for (b.hi[1] = b.lo[1] + 1; b.hi[1] <= n1; ++b.hi[1]) {
          for (int k = 0; k < n2; ++k)
            min1[k] = std::min(min1[k], min0[(b.hi[1] - 1) * n2 + k]);
          for (b.lo[2] = 0; b.lo[2] < n2; ++b.lo[2]) {
            double lo = kInfinity;
            for (b.hi[2] = b.lo[2] + 1; b.hi[2] <= n2; ++b.hi[2]) {
              lo = std::min(lo, min1[b.hi[2] - 1]);
              best = std::max(best, sw.average(b) / lo);
            }
          }
        }
      }
    }
  }
  return best;
}

double hruscev_rec(const Weights& w) {
  SummedVolume<double> sw(w.grid(), w.values());
  SummedVolume<double> sl(w.grid(),
                          transformed(w, [](double x) { return std::log(x); }));
  double best = 1.0;
  for_each_box(w.grid(), [&](const GridBox& b) {
    double vol = static_cast<double>(b.volume());
    best = std::max(best, sw.sum(b) / vol * std::exp(-sl.sum(b) / vol));
  });
  return best;
}

DominationWitness domination_witness(const Weights& w1d, double b,
                                     double s_max) {
  require_1d(w1d, "domination_exponent");
  if (!(b >= 1)) throw std::invalid_argument("domination_exponent: need B >= 1");
  auto v = as_span(w1d);
  const std::size_t n = v.size();
  DominationWitness out;
  out.s = s_max;
  std::vector<double> sorted;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t e = a + 2; e <= n; ++e) {
      sorted.assign(v.begin() + a, v.begin() + e);
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      double total = 0;
      for (double x : sorted) total += x;
      const double len = static_cast<double>(e - a);
      double top = 0;
      for (std::size_t k = 1; k < sorted.size(); ++k) {
        top += sorted[k - 1];
        double s = std::log(b * total / top) / std::log(len / static_cast<double>(k));
        if (s < out.s) {
          out.s = s;
          out.interval = GridBox::interval(static_cast<int>(a), static_cast<int>(e));
          out.k = static_cast<int>(k);
        }
      }
    }
  }
  return out;
}

double domination_exponent(const Weights& w1d, double b, double s_max) {
  return domination_witness(w1d, b, s_max).s;
}

double certified_exponent(const Weights& w, double s_max) {
  double s = s_max;
  for (int axis = 0; axis < w.grid().dim(); ++axis)
    for (std::int64_t line = 0; line < line_count(w.grid(), axis); ++line)
      s = std::min(s, domination_exponent(slice_line(w, axis, line), 2.0, s_max));
  return s;
}

ReverseHolderReport rhi_verify(const Weights& w, double r, double constant) {
  if (!(r > 1)) throw std::invalid_argument("rhi_verify: need r > 1");
  // Ratio is scale invariant; normalising by the max keeps w^r finite.
  const double top = w.values().maxCoeff();
  SummedVolume<double> s1(w.grid(), transformed(w, [&](double x) { return x / top; }));
  SummedVolume<double> sr(
      w.grid(), transformed(w, [&](double x) { return std::pow(x / top, r); }));
  ReverseHolderReport rep;
  rep.r = r;
  rep.constant = constant;
  rep.worst_ratio = 0;
  for_each_box(w.grid(), [&](const GridBox& b) {
    double vol = static_cast<double>(b.volume());
    double ratio = std::pow(sr.sum(b) / vol, 1.0 / r) / (s1.sum(b) / vol);
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_box = b;
    }
  });
  rep.holds = rep.worst_ratio <= constant;
  return rep;
}

double rhi_constant_from_domination(double b, double beta, double r) {
  if (!(b >= 1) || !(beta >= 1))
    throw std::invalid_argument("rhi_constant_from_domination: need B, beta >= 1");
  if (!(r > 1))
    throw std::domain_error("rhi_constant_from_domination: need r > 1");
  const double inv_r_dual = 1.0 - 1.0 / r;
  if (beta == 1.0) return std::pow(b, inv_r_dual);
  const double beta_dual = beta / (beta - 1.0);
  if (!(r < beta_dual))
    throw std::domain_error("rhi_constant_from_domination: need r < beta'");
  return std::pow(b, beta * inv_r_dual) *
         std::pow((beta_dual - 1.0) / (beta_dual - r), 1.0 / r);
}

double hl_norm_marcinkiewicz(double r) {
  if (!(r > 1)) throw std::domain_error("hl_norm_marcinkiewicz: need r > 1");
  return 2.0 * std::pow(2.0 * r / (r - 1.0), 1.0 / r);
}

double ainfty_upper_from_domination(double b, double beta,
                                    const NormModel& model) {
  if (!(b >= 1) || !(beta >= 1))
    throw std::invalid_argument("ainfty_upper_from_domination: need B, beta >= 1");
  constexpr int kPoints = 512;
  double lo, hi;  // range of log(r - 1)
  if (beta == 1.0) {
    lo = std::log(1e-6);
    hi = std::log(1e6);
  } else {
    const double span = beta / (beta - 1.0) - 1.0;
    lo = std::log(span * 1e-6);
    hi = std::log(span * (1.0 - 1e-6));
  }
  double best = kInfinity;
  for (int i = 0; i < kPoints; ++i) {
    double r = 1.0 + std::exp(lo + (hi - lo) * i / (kPoints - 1));
    best = std::min(best, model(r) * rhi_constant_from_domination(b, beta, r));
  }
  return std::max(best, 1.0);
}

WeightConstantsReport weight_constants(const Weights& w, double p,
                                       double s_max) {
  WeightConstantsReport r;
  r.p = p;
  r.ap_star = ap_star(w, p);
  r.ap_rec = ap_rec(w, p);
  r.fujii_wilson_per_slice_sup = ap_star(w, kInfinity);
  r.hruscev_rec = hruscev_rec(w);
  r.certified_exponent_s = certified_exponent(w, s_max);
  r.s_max = s_max;
  return r;
}

nlohmann::json to_json(const WeightConstantsReport& r) {
  nlohmann::json j;
  if (std::isinf(r.p))
    j["p"] = "inf";
  else
    j["p"] = r.p;
  j["ap_star"] = r.ap_star;
  j["ap_rec"] = r.ap_rec;
  j["fujii_wilson_per_slice_sup"] = r.fujii_wilson_per_slice_sup;
  j["hruscev_rec"] = r.hruscev_rec;
  j["certified_exponent_s"] = r.certified_exponent_s;
  j["s_max"] = r.s_max;
  return j;
}

}  // namespace solyanik
