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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "../oracles.h"
#include "solyanik/io.h"
#include "solyanik/weights.h"

namespace solyanik {
namespace {

TEST(WeightIo, RoundTripIsBitExact) {
  std::mt19937_64 rng(5);
  for (auto sizes : std::vector<std::vector<int>>{{7}, {3, 4}, {2, 3, 2}}) {
    Grid g(sizes);
    auto w = oracle::random_weight(g, rng, 2.0);
    for (auto fmt : {WeightFormat::kJson, WeightFormat::kCsv}) {
      std::stringstream ss;
      write_weight(ss, w, fmt);
      auto back = read_weight(ss, fmt);
      ASSERT_TRUE(back.grid() == g);
      for (std::int64_t i = 0; i < g.cell_count(); ++i)
        EXPECT_EQ(back.values()[i], w.values()[i]);
    }
  }
}

TEST(WeightIo, FilesByExtension) {
  auto dir = std::filesystem::temp_directory_path() / "solyanik_io_test";
  std::filesystem::create_directories(dir);
  auto w = generate_weight(LognormalSpec{0.7, 3}, Grid({4, 3}));
  for (const char* name : {"w.json", "w.csv"}) {
    auto path = (dir / name).string();
    save_weight(path, w, format_from_path(path));
    auto back = load_weight(path);
    for (std::int64_t i = 0; i < 12; ++i) EXPECT_EQ(back.values()[i], w.values()[i]);
  }
  EXPECT_THROW(format_from_path("w.txt"), FormatError);
  EXPECT_THROW(load_weight((dir / "missing.json").string()), FormatError);
}

TEST(WeightIo, RejectsZeroValue) {
  std::stringstream j(R"({"dim":1,"sizes":[2],"values":[1,0]})");
  EXPECT_THROW(read_weight(j, WeightFormat::kJson), FormatError);
  std::stringstream c("dim,2\n1\n0\n");
  EXPECT_THROW(read_weight(c, WeightFormat::kCsv), FormatError);
}

TEST(WeightIo, RejectsSizeMismatch) {
  std::stringstream j(R"({"dim":1,"sizes":[3],"values":[1,2]})");
  EXPECT_THROW(read_weight(j, WeightFormat::kJson), FormatError);
  std::stringstream j2(R"({"dim":2,"sizes":[3],"values":[1,2,3]})");
  EXPECT_THROW(read_weight(j2, WeightFormat::kJson), FormatError);
  std::stringstream c("dim,3\n1\n2\n");
  EXPECT_THROW(read_weight(c, WeightFormat::kCsv), FormatError);
  std::stringstream c2("dim,2\n1\n2\n3\n");
  EXPECT_THROW(read_weight(c2, WeightFormat::kCsv), FormatError);
  std::stringstream bad("{not json");
  EXPECT_THROW(read_weight(bad, WeightFormat::kJson), FormatError);
}

}  // namespace
}  // namespace solyanik
