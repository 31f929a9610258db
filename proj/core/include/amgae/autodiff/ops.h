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
#include <random>
#include <span>
#include <vector>

#include "amgae/autodiff/tensor.h"
#include "amgae/graph.h"
#include "amgae/types.h"

namespace amgae::ad {

// Probabilities entering a log are clamped to [kProbClamp, 1 - kProbClamp].
inline constexpr double kProbClamp = 1e-7;

// Shape mismatches throw std::invalid_argument; non-finite inputs to the
// loss functions throw std::domain_error.

Tensor MatMul(const Tensor& a, const Tensor& b);

// s * t with s constant (no gradient flows to s).
Tensor SparseMatMul(const ConstantMatrix& s, const Tensor& t);

Tensor Relu(const Tensor& x);
Tensor Sigmoid(const Tensor& x);
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& x, double c);
Tensor Transpose(const Tensor& x);
// z * z^T, computed on one triangle and mirrored, so exactly symmetric.
Tensor Gram(const Tensor& z);
Tensor Sum(const Tensor& x);

// Softmax over each row.
Tensor RowSoftmax(const Tensor& x);

// s * x for a 1x1 tensor s.
Tensor ScalarMul(const Tensor& s, const Tensor& x);
// x + s elementwise for a 1x1 tensor s.
Tensor AddScalar(const Tensor& x, const Tensor& s);
// w * a + (1 - w) * b for a 1x1 tensor w.
Tensor Mix(const Tensor& a, const Tensor& b, const Tensor& w);

Tensor ConcatCols(std::span<const Tensor> parts);
Tensor Column(const Tensor& x, Index j);
// Row i of x scaled by w(i, 0).
Tensor RowScale(const Tensor& x, const Tensor& w);

// Inverted dropout; identity when p == 0.
Tensor Dropout(const Tensor& x, double p, std::mt19937_64& rng);

// Mean squared error over the rows flagged in `rows`, normalized by
// (#rows selected) * cols. Throws std::invalid_argument when no row is selected.
Tensor MaskedRowMse(const Tensor& pred, const Matrix& target, const NodeMask& rows);

// sum_ij w_ij * BCE(target_ij, clamp(prob_ij)) / denominator. A denominator
// <= 0 means rows * cols.
Tensor WeightedBce(const Tensor& prob, const Matrix& target, const Matrix& weights,
                   double denominator = 0.0);

// Same loss restricted to a list of index pairs, with prob_ij =
// sigmoid(<z_i, z_j>) computed on the fly. Normalized by the pair count, so a
// uniform sample estimates the full N x N average without bias.
struct PairSample {
  Index i;
  Index j;
  double target;
  double weight;
};
Tensor PairBceFromEmbeddings(const Tensor& z, std::span<const PairSample> pairs);

// Mean cross-entropy of row-softmax(logits) against integer labels over `rows`.
Tensor SoftmaxCrossEntropy(const Tensor& logits, std::span<const int> labels,
                           std::span<const Index> rows);

}  // namespace amgae::ad
