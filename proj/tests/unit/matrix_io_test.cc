// Copyright 2026 The amgae Authors.
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


#include "amgae/matrix_io.h"

#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "temp_dir.h"

namespace amgae {
namespace {

TEST(MatrixIoTest, ExactRoundTrip) {
  testing::TempDir dir;
  Matrix m(3, 2);
  m << 0.1, -1e-300, 1.0 / 3.0, 12345678.9, std::numeric_limits<double>::denorm_min(), 0.0;
  WriteMatrix(m, dir / "m.tsv");
  EXPECT_EQ(ReadMatrix(dir / "m.tsv"), m);
}

TEST(MatrixIoTest, EmptyAndRagged) {
  testing::TempDir dir;
  {
    std::ofstream out(dir / "ragged.tsv");
    out << "1\t2\n3\n";
  }
  EXPECT_ANY_THROW(ReadMatrix(dir / "ragged.tsv"));
  EXPECT_ANY_THROW(ReadMatrix(dir / "absent.tsv"));
}

TEST(ParameterIoTest, RoundTripByName) {
  testing::TempDir dir;
  std::vector<ad::Parameter> params = {ad::Parameter("a", Matrix::Constant(2, 3, 0.25)),
                                       ad::Parameter("b", Matrix::Identity(2, 2))};
  WriteParameters(params, dir / "p.txt");
  std::vector<ad::Parameter> fresh = {ad::Parameter("a", Matrix::Zero(2, 3)),
                                      ad::Parameter("b", Matrix::Zero(2, 2))};
  ReadParameters(fresh, dir / "p.txt");
  EXPECT_EQ(fresh[0].value(), params[0].value());
  EXPECT_EQ(fresh[1].value(), params[1].value());

  std::vector<ad::Parameter> wrong_shape = {ad::Parameter("a", Matrix::Zero(3, 2)),
                                            ad::Parameter("b", Matrix::Zero(2, 2))};
  EXPECT_ANY_THROW(ReadParameters(wrong_shape, dir / "p.txt"));
  std::vector<ad::Parameter> wrong_name = {ad::Parameter("c", Matrix::Zero(2, 3)),
                                           ad::Parameter("b", Matrix::Zero(2, 2))};
  EXPECT_ANY_THROW(ReadParameters(wrong_name, dir / "p.txt"));
}

}  // namespace
}  // namespace amgae
