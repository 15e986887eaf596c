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

#include <iostream>

#include "CLI11.hpp"
#include "solyanik/commands.h"

int main(int argc, char** argv) {
  using namespace solyanik;
  CLI::App app{"Discrete strong maximal operator laboratory"};
  app.require_subcommand(1);
  RunConfig c;
  std::string mode = "double", format;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--weight", c.weight, "generator spec or weight file");
    sub->add_option("--grid", c.grid, "grid sizes, one per axis")->delimiter(',');
    sub->add_option("--alpha-grid", c.alpha_grid, "lo:hi:step or a,b,c");
    sub->add_option("--p", c.p, "exponents")->delimiter(',');
    sub->add_option("--delta", c.delta, "selection parameters")->delimiter(',');
    sub->add_option("--budget", c.budget, "search evaluations per alpha");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--tol", c.tol, "relative tolerance");
    sub->add_option("--mode", mode, "double or rational")
        ->check(CLI::IsMember({"double", "rational"}));
    sub->add_option("--out", c.out, "output file");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* constants = app.add_subcommand("constants", "weight constants");
  add_common(constants);
  auto* sweep = app.add_subcommand("sweep", "Tauberian constants over an alpha grid");
  add_common(sweep);
  sweep->add_option("--method", c.method, "auto, exhaustive or search");
  sweep->add_option("--operator", c.op, "strong or weighted");
  auto* covering = app.add_subcommand("covering", "greedy box selection");
  add_common(covering);
  covering->add_option("--rects", c.rects, "JSON file of boxes");
  covering->add_option("--count", c.count, "random family size");
  covering->add_option("--max-side", c.max_side, "random family side cap");
  auto* counter = app.add_subcommand("counterexample", "point-mass lower bound");
  add_common(counter);
  counter->add_option("--atoms", c.atoms, "number of atoms N");
  counter->add_option("--alpha", c.alpha, "alpha in (0,1)");
  auto* verify = app.add_subcommand("verify", "full verification suite");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  for (auto* sub : app.get_subcommands())
    if (sub->count("--seed")) c.seed = seed;
  c.mode = mode == "rational" ? ArithmeticMode::kRational : ArithmeticMode::kDouble;
  if (format == "csv") c.format = OutputFormat::kCsv;
  if (format == "json") c.format = OutputFormat::kJson;
  return run_command(c, std::cout, std::cerr);
}
