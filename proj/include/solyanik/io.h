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

#ifndef SOLYANIK_IO_H_
#define SOLYANIK_IO_H_

// Weight files.
//
//   JSON: {"dim": 2, "sizes": [N1, N2], "values": [row-major flat array]}
//   CSV:  header line "dim,N1[,N2[,N3]]" then one value per line, row-major.
//
// Values are written in shortest round-trip form, so save/load is bit-exact.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "solyanik/lattice.h"

namespace solyanik {

enum class WeightFormat { kJson, kCsv };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Format from the file extension (.json / .csv); throws on anything else.
WeightFormat format_from_path(const std::string& path);

Weights read_weight(std::istream& in, WeightFormat format);
void write_weight(std::ostream& out, const Weights& w, WeightFormat format);

Weights load_weight(const std::string& path, WeightFormat format);
Weights load_weight(const std::string& path);
void save_weight(const std::string& path, const Weights& w,
                 WeightFormat format);

}  // namespace solyanik

#endif  // SOLYANIK_IO_H_
