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

#pragma once

#include <filesystem>
#include <vector>

#include "amgae/autodiff/tensor.h"
#include "amgae/types.h"

namespace amgae {

// Dense matrix as tab-separated rows, values printed with round-trip precision.
void WriteMatrix(const Matrix& m, const std::filesystem::path& path);
// Throws ParseError on a bad value or ragged row.
Matrix ReadMatrix(const std::filesystem::path& path);

// Named parameter dump: per parameter a "name rows cols" line followed by
// `rows` lines of values.
void WriteParameters(const std::vector<ad::Parameter>& params, const std::filesystem::path& path);
// Loads values into the parameters with matching names and shapes. Throws
// std::invalid_argument when a parameter is absent from the file or has
// another shape.
void ReadParameters(std::vector<ad::Parameter>& params, const std::filesystem::path& path);

}  // namespace amgae
