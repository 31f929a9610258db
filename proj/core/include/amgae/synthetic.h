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

#include <cstdint>

#include "amgae/dataset.h"

namespace amgae {

// Planted-partition graph with block-correlated binary attributes. The
// attribute dimensions are split evenly across blocks; a node switches on each
// dimension of its own block with probability attr_in * exp(-attr_decay * r / m),
// r being the dimension's rank inside the block and m the block width, and
// any other dimension with `attr_noise`. A positive decay makes some in-block
// dimensions more popular than others, as with real bag-of-words attributes.
struct SyntheticSpec {
  Index nodes = 200;
  int blocks = 2;
  double p_in = 0.08;
  double p_out = 0.005;
  Index dims = 40;
  double attr_in = 0.4;
  double attr_noise = 0.02;
  double attr_decay = 0.0;
  std::uint64_t seed = 0;
};

// Labels are block ids; node i belongs to block i % blocks. Every node gets
// at least one attribute.
DatasetBundle MakePlantedPartition(const SyntheticSpec& spec);

}  // namespace amgae
