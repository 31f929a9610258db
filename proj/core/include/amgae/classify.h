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

// Downstream node classification with a two-layer GCN over reconstructed
// attributes, scored by stratified k-fold cross-validation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "amgae/graph.h"

namespace amgae {

struct ClassifierConfig {
  Index hidden = 64;
  double lr = 1e-2;
  std::size_t epochs = 200;
  double weight_decay = 5e-4;
  double dropout = 0.5;  // on the hidden layer, training only
  std::size_t folds = 5;
  std::size_t repeats = 10;
  std::uint64_t seed = 0;
  bool parallel = false;  // run folds concurrently; results do not depend on it

  void Validate() const;
};

struct ClassificationReport {
  std::size_t folds = 0;
  std::size_t repeats = 0;
  std::vector<double> accuracy;  // repeat-major: accuracy[r * folds + f]

  double mean() const;
  double stddev() const;  // sample (n - 1) convention
};

// Fold id in [0, folds) per node. Each class is shuffled and dealt round-robin,
// continuing the deal across classes so fold sizes differ by at most one.
// Throws std::invalid_argument when some class has fewer than `folds` members.
std::vector<int> StratifiedFolds(std::span<const int> labels, std::size_t folds,
                                 std::uint64_t seed);

// `repeats` independent fold assignments derived from `seed`.
std::vector<std::vector<int>> RepeatedStratifiedFolds(std::span<const int> labels,
                                                      std::size_t folds, std::size_t repeats,
                                                      std::uint64_t seed);

// Trains one classifier on `train` and returns its accuracy on `test`.
double TrainAndScore(const ConstantMatrix& adjacency, const Matrix& features,
                     std::span<const int> labels, std::span<const Index> train,
                     std::span<const Index> test, const ClassifierConfig& cfg,
                     std::uint64_t run_seed);

ClassificationReport ClassifyNodes(const SparseGraph& graph, const Matrix& features,
                                   std::span<const int> labels, const ClassifierConfig& cfg);
// With fold assignments supplied by the caller (e.g. read from a split file).
ClassificationReport ClassifyNodes(const SparseGraph& graph, const Matrix& features,
                                   std::span<const int> labels,
                                   const std::vector<std::vector<int>>& folds,
                                   const ClassifierConfig& cfg);

}  // namespace amgae
