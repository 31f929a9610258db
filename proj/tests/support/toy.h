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


// Small fixed graphs shared by the model, training and acceptance tests.

#pragma once

#include <random>
#include <vector>

#include "amgae/graph.h"
#include "amgae/model.h"

namespace amgae::testing {

// Two triangles joined by one bridge edge; nodes 1 and 4 miss attributes.
struct ToyProblem {
  SparseGraph graph;
  AttributeMatrix attributes;
};

inline ToyProblem SixNodeProblem(Index dims = 5, std::uint64_t seed = 3) {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution on(0.5);
  Matrix x = Matrix::Zero(6, dims);
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < dims; ++j) x(i, j) = on(rng) ? 1.0 : 0.0;
    x(i, i % dims) = 1.0;
  }
  NodeMask observed = {true, false, true, true, false, true};
  return {SparseGraph::FromEdges(6, edges), AttributeMatrix(x, observed)};
}

// A configuration small enough for finite differences over every weight.
inline TrainConfig TinyConfig() {
  TrainConfig cfg;
  cfg.p = 2;
  cfg.k = 2;
  cfg.h = 2;
  cfg.encoder_hidden = {4};
  cfg.latent_dim = 3;
  cfg.decoder_hidden = {4};
  cfg.max_iters = 50;
  cfg.min_iters = 0;
  cfg.lr = 1e-2;
  return cfg;
}

}  // namespace amgae::testing
