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

#include "solyanik/io.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace solyanik {
namespace {

Weights checked_weight(const std::vector<int>& sizes,
                       const std::vector<double>& values) {
  Grid grid = [&] {
    try {
      return Grid(sizes);
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("weight file: ") + e.what());
    }
  }();
  if (static_cast<std::int64_t>(values.size()) != grid.cell_count())
    throw FormatError("weight file: expected " +
                      std::to_string(grid.cell_count()) + " values, found " +
                      std::to_string(values.size()));
  for (double v : values)
    if (!(v > 0) || !std::isfinite(v))
      throw FormatError("weight file: values must be positive and finite");
  return Weights::from_vector(grid, values);
}

double parse_double(const std::string& token) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw FormatError("weight file: bad number '" + token + "'");
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
    ++used;
  if (used != token.size())
    throw FormatError("weight file: bad number '" + token + "'");
  return v;
}

}  // namespace

WeightFormat format_from_path(const std::string& path) {
  auto ends_with = [&](const std::string& suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".json")) return WeightFormat::kJson;
  if (ends_with(".csv")) return WeightFormat::kCsv;
  throw FormatError("unknown weight file extension: " + path);
}

Weights read_weight(std::istream& in, WeightFormat format) {
  if (format == WeightFormat::kJson) {
    nlohmann::json j;
    try {
      in >> j;
      int dim = j.at("dim").get<int>();
      auto sizes = j.at("sizes").get<std::vector<int>>();
      auto values = j.at("values").get<std::vector<double>>();
      if (static_cast<int>(sizes.size()) != dim)
        throw FormatError("weight file: dim does not match sizes");
      return checked_weight(sizes, values);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("weight file: ") + e.what());
    }
  }
  std::string line;
  if (!std::getline(in, line)) throw FormatError("weight file: empty CSV");
  std::vector<int> header;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ','))
      header.push_back(static_cast<int>(parse_double(tok)));
  }
  if (header.size() < 2 || header[0] != static_cast<int>(header.size()) - 1)
    throw FormatError("weight file: CSV header must be dim,N1[,N2[,N3]]");
  std::vector<int> sizes(header.begin() + 1, header.end());
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    values.push_back(parse_double(line));
  }
  return checked_weight(sizes, values);
}

void write_weight(std::ostream& out, const Weights& w, WeightFormat format) {
  const Grid& g = w.grid();
  if (format == WeightFormat::kJson) {
    out << "{\"dim\": " << g.dim() << ", \"sizes\": [";
    for (int a = 0; a < g.dim(); ++a) out << (a ? ", " : "") << g.size(a);
    out << "], \"values\": [";
    for (std::int64_t i = 0; i < g.cell_count(); ++i)
      out << (i ? ", " : "") << shortest_repr(w[i]);
    out << "]}\n";
    return;
  }
  out << g.dim();
  for (int a = 0; a < g.dim(); ++a) out << ',' << g.size(a);
  out << '\n';
  for (std::int64_t i = 0; i < g.cell_count(); ++i)
    out << shortest_repr(w[i]) << '\n';
}

Weights load_weight(const std::string& path, WeightFormat format) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open weight file: " + path);
  return read_weight(in, format);
}

Weights load_weight(const std::string& path) {
  return load_weight(path, format_from_path(path));
}

void save_weight(const std::string& path, const Weights& w,
                 WeightFormat format) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write weight file: " + path);
  write_weight(out, w, format);
}

}  // namespace solyanik
