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

#ifndef SOLYANIK_COMMANDS_H_
#define SOLYANIK_COMMANDS_H_

// Batch commands behind the command-line front end. Each writes its report
// to `out` (or to config.out when set) and returns a process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "solyanik/lattice.h"

namespace solyanik {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ArithmeticMode { kDouble, kRational };
enum class OutputFormat { kCsv, kJson };

struct RunConfig {
  std::string command;
  std::string weight;           // generator spec or path to a weight file
  std::vector<int> grid;        // required for generator specs (not tensor)
  std::string alpha_grid;       // "lo:hi:step" or "a,b,c"
  std::vector<double> p{2.0};
  std::vector<double> delta{0.5};
  int budget = 2000;
  std::optional<std::uint64_t> seed;
  double tol = 1e-9;
  ArithmeticMode mode = ArithmeticMode::kDouble;
  std::string out;              // empty: the stream passed to run_command
  std::optional<OutputFormat> format;

  std::string method = "auto";    // sweep: auto | exhaustive | search
  std::string op = "strong";      // sweep: strong | weighted
  std::string rects;              // covering: JSON file of boxes
  int count = 50;                 // covering: random family size
  int max_side = 0;               // covering: 0 means half the grid
  int atoms = 10000;              // counterexample: N
  double alpha = 0.9;             // counterexample
};

nlohmann::json to_json(const RunConfig& c);

// "0.5:0.95:0.05" (inclusive, to within half a step) or "0.5,0.9".
std::vector<double> parse_alpha_grid(const std::string& text);

// Generator spec when the text starts with a known kind, file otherwise.
Weights resolve_weight(const RunConfig& c);

int cmd_constants(const RunConfig& c, std::ostream& out);
int cmd_sweep(const RunConfig& c, std::ostream& out);
int cmd_covering(const RunConfig& c, std::ostream& out);
int cmd_counterexample(const RunConfig& c, std::ostream& out);
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);

// Dispatches on c.command, mapping UsageError and bad input to exit 2 and
// reporting the message on `err`.
int run_command(const RunConfig& c, std::ostream& out, std::ostream& err);

// The verification suite behind cmd_verify. Hard violations are listed in
// report["violations"]; report["status"] is "pass" or "fail".
nlohmann::json run_verification(const RunConfig& c);

}  // namespace solyanik

#endif  // SOLYANIK_COMMANDS_H_
