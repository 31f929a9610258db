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

// Structure branch: per-order path embeddings are fused by node-level
// attention, decoded into an adjacency estimate, and scored against the
// original adjacency with extra weight on attribute-missing pairs.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "amgae/autodiff/ops.h"
#include "amgae/autodiff/tensor.h"
#include "amgae/graph.h"

namespace amgae {

// One projection vector (d x 1) and one scalar bias per path. The logit of
// node n on path h is <w_h, z_n^h> + b_h.
struct PathAttention {
  std::vector<ad::Parameter> w;
  std::vector<ad::Parameter> b;

  PathAttention() = default;
  PathAttention(std::size_t paths, Index latent_dim);
  std::size_t paths() const { return w.size(); }
};

// Per-pair weight: gamma when both endpoints are attribute-missing, else 1.
// With `exclude_diagonal` the (i, i) pairs get weight 0.
class EdgeWeightMatrix {
 public:
  EdgeWeightMatrix(NodeMask observed, double gamma, bool exclude_diagonal = false);

  double at(Index i, Index j) const;
  double gamma() const { return gamma_; }
  bool exclude_diagonal() const { return exclude_diagonal_; }
  Index size() const { return static_cast<Index>(observed_.size()); }
  // Number of pairs carrying nonzero weight.
  double pair_count() const;
  Matrix Dense() const;

 private:
  NodeMask observed_;
  double gamma_;
  bool exclude_diagonal_;
};

// N x H attention weights; each row is a softmax over paths.
ad::Tensor ComputePathAttention(std::span<const ad::Tensor> paths, const PathAttention& att);

// Row n = sum_h weights(n, h) * paths[h].row(n).
ad::Tensor FusePaths(std::span<const ad::Tensor> paths, const ad::Tensor& weights);

// sigmoid(zs * zs^T).
ad::Tensor DecodeAdjacency(const ad::Tensor& zs);

// Binary reconstruction target: A, plus ones on the diagonal when
// `diagonal_is_edge` is set.
Matrix StructureTarget(const SparseGraph& g, bool diagonal_is_edge = true);

// sum_ij w_ij * BCE(A_ij, ahat_ij) / (number of weighted pairs); with every
// pair weighted that is the 1/N^2 average.
ad::Tensor StructureLoss(const ad::Tensor& ahat, const Matrix& target,
                         const EdgeWeightMatrix& weights);
// Same, with the weights already materialized (the training loop caches them).
ad::Tensor StructureLoss(const ad::Tensor& ahat, const Matrix& target,
                         const Matrix& dense_weights, double pair_count);

// Uniformly subsampled pair variant for graphs too large for an N x N loss.
// Draws `samples` pairs (with replacement) and evaluates the weighted BCE of
// sigmoid(<zs_i, zs_j>) on them directly from the embedding.
std::vector<ad::PairSample> SampleStructurePairs(const SparseGraph& g,
                                                 const EdgeWeightMatrix& weights,
                                                 std::size_t samples, bool diagonal_is_edge,
                                                 std::mt19937_64& rng);
ad::Tensor SampledStructureLoss(const ad::Tensor& zs, std::span<const ad::PairSample> pairs);

}  // namespace amgae
