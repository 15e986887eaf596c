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

#include "solyanik/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "solyanik/covering.h"
#include "solyanik/exact.h"
#include "solyanik/io.h"
#include "solyanik/maximal.h"
#include "solyanik/tauberian.h"
#include "solyanik/weights.h"

namespace solyanik {
namespace {

std::string number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return shortest_repr(x);
}

OutputFormat format_or(const RunConfig& c, OutputFormat fallback) {
  return c.format.value_or(fallback);
}

// Runs `body` against config.out when set, `out` otherwise.
template <class Fn>
int emit(const RunConfig& c, std::ostream& out, Fn&& body) {
  if (c.out.empty()) return body(out);
  std::ostringstream buf;
  int code = body(buf);
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write output file: " + c.out);
  f << buf.str();
  return code;
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw UsageError(c.command + ": --seed is required");
  return *c.seed;
}

void check_alpha_list(const std::vector<double>& alphas) {
  if (alphas.empty()) throw UsageError("empty alpha grid");
  for (double a : alphas)
    if (!(a > 0 && a < 1)) throw UsageError("alpha values must lie in (0,1)");
}

bool is_constant(const Weights& w) {
  return w.values().minCoeff() == w.values().maxCoeff();
}

// Exact level-set ratio of a witness, for rational mode.
double exact_ratio(const TauberianProblem& p, const CellSet& e, double alpha) {
  const auto wq = p.ambient.cast<Rational>();
  FlatArray<Rational> numer(wq.values().size());
  for (Eigen::Index i = 0; i < numer.size(); ++i) {
    Rational f = e.contains(i) ? Rational(1) : Rational(0);
    numer[i] = p.kind == MaximalKind::kWeighted ? f * wq[i] : f;
  }
  const FlatArray<Rational>* denom =
      p.kind == MaximalKind::kWeighted ? &wq.values() : nullptr;
  CellSet level =
      ratio_level_set<Rational>(e.grid(), numer, denom, to_rational(alpha));
  Rational r = weighted_measure(wq, level) / weighted_measure(wq, e);
  return to_double(r);
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["weight"] = c.weight;
  j["grid"] = c.grid;
  j["alpha_grid"] = c.alpha_grid;
  j["p"] = c.p;
  j["delta"] = c.delta;
  j["budget"] = c.budget;
  j["seed"] = c.seed ? nlohmann::json(*c.seed) : nlohmann::json(nullptr);
  j["tol"] = c.tol;
  j["mode"] = c.mode == ArithmeticMode::kRational ? "rational" : "double";
  j["out"] = c.out;
  j["format"] = !c.format ? "default"
                : *c.format == OutputFormat::kCsv ? "csv" : "json";
  j["method"] = c.method;
  j["operator"] = c.op;
  j["rects"] = c.rects;
  j["count"] = c.count;
  j["max_side"] = c.max_side;
  j["atoms"] = c.atoms;
  j["alpha"] = c.alpha;
  return j;
}

std::vector<double> parse_alpha_grid(const std::string& text) {
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad alpha grid '" + text + "'");
    }
    if (used != s.size()) throw UsageError("bad alpha grid '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, sep);) parts.push_back(tok);
  std::vector<double> out;
  if (sep == ':') {
    if (parts.size() != 3) throw UsageError("alpha grid range must be lo:hi:step");
    double lo = num(parts[0]), hi = num(parts[1]), step = num(parts[2]);
    if (!(step > 0) || hi < lo) throw UsageError("alpha grid: need step > 0, hi >= lo");
    auto n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
    for (long k = 0; k <= n; ++k) {
      // Round to the step's decimal precision so 0.55 + 0.05 prints as 0.6.
      double a = lo + static_cast<double>(k) * step;
      out.push_back(std::stod(shortest_repr(std::round(a * 1e12) / 1e12)));
    }
  } else {
    for (const auto& p : parts) out.push_back(num(p));
  }
  check_alpha_list(out);
  return out;
}

Weights resolve_weight(const RunConfig& c) {
  if (c.weight.empty()) throw UsageError("--weight is required");
  static const char* kKinds[] = {"constant:", "checkerboard:", "power:",
                                 "tensor:", "lognormal:"};
  bool is_spec = false;
  for (const char* k : kKinds) is_spec |= c.weight.rfind(k, 0) == 0;
  if (!is_spec) {
    if (!std::filesystem::exists(c.weight))
      throw UsageError("weight file not found: " + c.weight);
    try {
      return load_weight(c.weight);
    } catch (const FormatError& e) {
      throw UsageError(e.what());
    }
  }
  try {
    WeightSpec spec = parse_weight_spec(c.weight);
    if (const auto* t = std::get_if<TensorSpec>(&spec)) {
      Grid g = tensor_grid(*t);
      if (!c.grid.empty() && !(Grid(c.grid) == g))
        throw UsageError("--grid does not match the tensor factors");
      return generate_weight(spec, g);
    }
    if (c.grid.empty()) throw UsageError("--grid is required for generated weights");
    return generate_weight(spec, Grid(c.grid));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_constants(const RunConfig& c, std::ostream& out) {
  Weights w = resolve_weight(c);
  for (double p : c.p)
    if (!(p >= 1)) throw UsageError("--p values must be >= 1");
  nlohmann::json j;
  j["config"] = to_json(c);
  j["grid"] = w.grid().sizes();
  nlohmann::json reports = nlohmann::json::array();
  for (double p : c.p) reports.push_back(to_json(weight_constants(w, p)));
  j["reports"] = reports;
  return emit(c, out, [&](std::ostream& o) {
    if (format_or(c, OutputFormat::kJson) == OutputFormat::kCsv) {
      o << "# config: " << to_json(c).dump() << "\n";
      o << "p,ap_star,ap_rec,fujii_wilson_per_slice_sup,hruscev_rec,"
           "certified_exponent_s,s_max\n";
      for (double p : c.p) {
        auto r = weight_constants(w, p);
        o << number(r.p) << ',' << number(r.ap_star) << ',' << number(r.ap_rec)
          << ',' << number(r.fujii_wilson_per_slice_sup) << ','
          << number(r.hruscev_rec) << ',' << number(r.certified_exponent_s)
          << ',' << number(r.s_max) << "\n";
      }
    } else {
      o << j.dump(2) << "\n";
    }
    return kExitOk;
  });
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  Weights w = resolve_weight(c);
  const std::uint64_t seed = require_seed(c);
  auto alphas = parse_alpha_grid(c.alpha_grid.empty() ? "0.55:0.95:0.05" : c.alpha_grid);
  if (c.budget < 1) throw UsageError("--budget must be >= 1");
  if (c.op != "strong" && c.op != "weighted")
    throw UsageError("--operator must be strong or weighted");
  const bool weighted = c.op == "weighted";
  TauberianProblem problem = weighted ? TauberianProblem::strong_weighted(w)
                                      : TauberianProblem::strong(w);
  const std::int64_t cells = w.grid().cell_count();
  bool exhaustive;
  if (c.method == "auto") {
    exhaustive = cells <= 16;
  } else if (c.method == "exhaustive") {
    if (cells > kExhaustiveCellLimit)
      throw UsageError("exhaustive sweep needs at most " +
                       std::to_string(kExhaustiveCellLimit) + " cells");
    exhaustive = true;
  } else if (c.method == "search") {
    exhaustive = false;
  } else {
    throw UsageError("--method must be auto, exhaustive or search");
  }

  const int n = w.grid().dim();
  const double s_star = certified_exponent(w);
  const double s_paper = 1.0 / (4.0 * ap_star(w, kInfinity));
  const bool measure_bound_applies = n == 1 && (weighted || is_constant(w));

  std::vector<TauberianEstimate> est;
  if (exhaustive) {
    est = tauberian_exhaustive_sweep(problem, alphas);
  } else {
    for (double a : alphas) est.push_back(tauberian_search(problem, a, c.budget, seed));
  }
  if (c.mode == ArithmeticMode::kRational && cells <= 64) {
    for (auto& e : est) e.lower_bound = exact_ratio(problem, e.witness, e.alpha);
  }

  if (format_or(c, OutputFormat::kCsv) == OutputFormat::kJson) {
    nlohmann::json j;
    j["config"] = to_json(c);
    j["certified_exponent_s"] = s_star;
    j["paper_exponent_s"] = s_paper;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& e : est) {
      auto bound_or_null = [](bool ok, double v) {
        return ok ? nlohmann::json(v) : nlohmann::json(nullptr);
      };
      bool cert_ok = !weighted && strong_bound_valid(e.alpha, n, s_star);
      rows.push_back(
          {{"alpha", e.alpha},
           {"lower_bound", e.lower_bound},
           {"bound_certified",
            bound_or_null(cert_ok, cert_ok ? strong_bound(e.alpha, n, s_star) : 0)},
           {"bound_paper",
            bound_or_null(strong_bound_valid(e.alpha, n, s_paper),
                          strong_bound_valid(e.alpha, n, s_paper)
                              ? strong_bound(e.alpha, n, s_paper)
                              : 0)},
           {"bound_measure", bound_or_null(measure_bound_applies,
                                           measure_bound_applies
                                               ? measure_1d_bound(e.alpha, 0)
                                               : 0)},
           {"witness", e.witness.members()},
           {"method", to_string(e.method)}});
    }
    j["rows"] = rows;
    return emit(c, out, [&](std::ostream& o) {
      o << j.dump(2) << "\n";
      return kExitOk;
    });
  }
  return emit(c, out, [&](std::ostream& o) {
    o << "# config: " << to_json(c).dump() << "\n";
    o << "# certified_exponent_s: " << number(s_star)
      << ", paper_exponent_s: " << number(s_paper) << "\n";
    o << "alpha,lower_bound,bound_certified,bound_paper,bound_measure,"
         "witness_size,method,seed\n";
    for (const auto& e : est) {
      double cert = weighted ? std::nan("")
                    : strong_bound_valid(e.alpha, n, s_star)
                        ? strong_bound(e.alpha, n, s_star)
                        : kInfinity;
      double paper = strong_bound_valid(e.alpha, n, s_paper)
                         ? strong_bound(e.alpha, n, s_paper)
                         : std::nan("");
      double meas = measure_bound_applies ? measure_1d_bound(e.alpha, 0) : std::nan("");
      o << number(e.alpha) << ',' << number(e.lower_bound) << ',' << number(cert)
        << ',' << number(paper) << ',' << number(meas) << ','
        << e.witness.size() << ',' << to_string(e.method) << ',' << seed << "\n";
    }
    return kExitOk;
  });
}

int cmd_covering(const RunConfig& c, std::ostream& out) {
  Weights w = resolve_weight(c);
  const Grid& g = w.grid();
  std::vector<GridBox> rects;
  if (!c.rects.empty()) {
    std::ifstream f(c.rects);
    if (!f) throw UsageError("rectangle file not found: " + c.rects);
    try {
      rects = rects_from_json(nlohmann::json::parse(f), g);
    } catch (const std::exception& e) {
      throw UsageError(std::string("rectangle file: ") + e.what());
    }
  } else {
    if (c.count < 1) throw UsageError("--count must be >= 1");
    int side = c.max_side > 0 ? c.max_side : 0;
    if (side == 0) {
      side = 1;
      for (int a = 0; a < g.dim(); ++a) side = std::max(side, g.size(a) / 2);
    }
    rects = random_rect_family(g, c.count, side, require_seed(c));
  }
  if (rects.empty()) throw UsageError("empty rectangle family");
  for (double d : c.delta)
    if (!(d > 0 && d < 1)) throw UsageError("--delta values must lie in (0,1)");
  for (double p : c.p)
    if (!(p >= 1) || std::isinf(p)) throw UsageError("--p values must lie in [1,inf)");
  if (c.format == OutputFormat::kCsv) throw UsageError("covering emits JSON only");

  const double s_star = certified_exponent(w);
  std::vector<double> k_values;
  for (double p : c.p) k_values.push_back(ap_rec(w, p));
  bool ok = true;
  nlohmann::json j;
  j["config"] = to_json(c);
  j["grid"] = g.sizes();
  j["rects"] = rects_to_json(rects, g.dim());
  j["certified_exponent_s"] = s_star;
  nlohmann::json runs = nlohmann::json::array();
  for (double d : c.delta) {
    SelectionResult sel = cf_select(rects, w, d);
    nlohmann::json run;
    run["delta"] = d;
    run["selection"] = to_json(sel);
    auto inc = verify_inclusion(sel);
    ok &= inc.holds;
    run["inclusion"] = to_json(inc);
    nlohmann::json sparsity = nlohmann::json::array();
    for (std::size_t i = 0; i < c.p.size(); ++i) {
      auto rep = verify_sparsity(sel, w, c.p[i], k_values[i], c.tol);
      ok &= rep.holds;
      sparsity.push_back(to_json(rep));
    }
    run["sparsity"] = sparsity;
    auto ret = verify_mass_retention(sel, w, s_star, g.dim(), c.tol);
    ok &= !ret.in_range || ret.holds;
    run["retention"] = to_json(ret);
    runs.push_back(run);
  }
  j["runs"] = runs;
  j["status"] = ok ? "pass" : "fail";
  return emit(c, out, [&](std::ostream& o) {
    o << j.dump(2) << "\n";
    return ok ? kExitOk : kExitAssertion;
  });
}

int cmd_counterexample(const RunConfig& c, std::ostream& out) {
  if (c.atoms < 1) throw UsageError("--atoms must be >= 1");
  if (!(c.alpha > 0 && c.alpha < 1)) throw UsageError("--alpha must lie in (0,1)");
  auto r = dirac_counterexample(c.atoms, c.alpha);
  return emit(c, out, [&](std::ostream& o) {
    if (format_or(c, OutputFormat::kJson) == OutputFormat::kCsv) {
      o << "# config: " << to_json(c).dump() << "\n";
      o << "atoms,alpha,lower_bound,witness_count\n";
      o << c.atoms << ',' << number(c.alpha) << ',' << number(r.lower_bound) << ','
        << r.witnesses.size() << "\n";
    } else {
      nlohmann::json j;
      j["config"] = to_json(c);
      j["atoms"] = c.atoms;
      j["alpha"] = c.alpha;
      j["lower_bound"] = r.lower_bound;
      j["witness_count"] = r.witnesses.size();
      if (!r.witnesses.empty()) {
        j["first_witness"] = r.witnesses.front();
        j["last_witness"] = r.witnesses.back();
      }
      o << j.dump(2) << "\n";
    }
    return kExitOk;
  });
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_seed(c);
  if (c.format == OutputFormat::kCsv) throw UsageError("verify emits JSON only");
  nlohmann::json report = run_verification(c);
  const bool pass = report["status"] == "pass";
  if (!pass) {
    const auto& v = report["violations"];
    // Smallest instance first: fewest cells, then smallest E.
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      auto key = [&](std::size_t k) {
        return std::pair{v[k].value("cells", 0), v[k].value("set_size", 0)};
      };
      if (key(i) < key(best)) best = i;
    }
    err << "verify: " << v.size() << " hard violation(s); minimal instance:\n"
        << v[best].dump(2) << "\n";
  }
  return emit(c, out, [&](std::ostream& o) {
    o << report.dump(2) << "\n";
    return pass ? kExitOk : kExitAssertion;
  });
}

int run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "constants") return cmd_constants(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    if (c.command == "covering") return cmd_covering(c, out);
    if (c.command == "counterexample") return cmd_counterexample(c, out);
    if (c.command == "verify") return cmd_verify(c, out, err);
    throw UsageError("unknown command '" + c.command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitAssertion;
  }
}

}  // namespace solyanik
