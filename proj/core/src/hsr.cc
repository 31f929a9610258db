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

#include "amgae/hsr.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace amgae {

PathAttention::PathAttention(std::size_t paths, Index latent_dim) {
  for (std::size_t h = 0; h < paths; ++h) {
    w.emplace_back("attention.w." + std::to_string(h), Matrix::Zero(latent_dim, 1));
    b.emplace_back("attention.b." + std::to_string(h), Matrix::Zero(1, 1));
  }
}

EdgeWeightMatrix::EdgeWeightMatrix(NodeMask observed, double gamma, bool exclude_diagonal)
    : observed_(std::move(observed)), gamma_(gamma), exclude_diagonal_(exclude_diagonal) {
  if (!(gamma > 0.0)) throw std::invalid_argument("EdgeWeightMatrix: gamma must be > 0");
}

double EdgeWeightMatrix::at(Index i, Index j) const {
  if (i == j && exclude_diagonal_) return 0.0;
  const bool both_missing =
      !observed_[static_cast<std::size_t>(i)] && !observed_[static_cast<std::size_t>(j)];
  return both_missing ? gamma_ : 1.0;
}

double EdgeWeightMatrix::pair_count() const {
  const double n = static_cast<double>(size());
  return exclude_diagonal_ ? n * (n - 1.0) : n * n;
}

Matrix EdgeWeightMatrix::Dense() const {
  const Index n = size();
  Matrix w(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) w(i, j) = at(i, j);
  }
  return w;
}

ad::Tensor ComputePathAttention(std::span<const ad::Tensor> paths, const PathAttention& att) {
  if (paths.empty()) throw std::invalid_argument("PathAttention: no paths");
  if (paths.size() != att.paths()) {
    throw std::invalid_argument("PathAttention: " + std::to_string(paths.size()) +
                                " paths but parameters for " + std::to_string(att.paths()));
  }
  std::vector<ad::Tensor> logits;
  logits.reserve(paths.size());
  for (std::size_t h = 0; h < paths.size(); ++h) {
    if (paths[h].rows() != paths[0].rows() || paths[h].cols() != paths[0].cols()) {
      throw std::invalid_argument("PathAttention: path shapes differ");
    }
    logits.push_back(ad::AddScalar(ad::MatMul(paths[h], att.w[h]), att.b[h]));
  }
  return ad::RowSoftmax(ad::ConcatCols(logits));
}

ad::Tensor FusePaths(std::span<const ad::Tensor> paths, const ad::Tensor& weights) {
  if (paths.empty()) throw std::invalid_argument("FusePaths: no paths");
  if (weights.cols() != static_cast<Index>(paths.size()) || weights.rows() != paths[0].rows()) {
    throw std::invalid_argument("FusePaths: weights must be N x H");
  }
  ad::Tensor out = ad::RowScale(paths[0], ad::Column(weights, 0));
  for (std::size_t h = 1; h < paths.size(); ++h) {
    if (paths[h].rows() != paths[0].rows() || paths[h].cols() != paths[0].cols()) {
      throw std::invalid_argument("FusePaths: path shapes differ");
    }
    out = ad::Add(out, ad::RowScale(paths[h], ad::Column(weights, static_cast<Index>(h))));
  }
  return out;
}

ad::Tensor DecodeAdjacency(const ad::Tensor& zs) {
  return ad::Sigmoid(ad::Gram(zs));
}

Matrix StructureTarget(const SparseGraph& g, bool diagonal_is_edge) {
  Matrix t = g.DenseAdjacency();
  if (diagonal_is_edge) t.diagonal().setOnes();
  return t;
}

ad::Tensor StructureLoss(const ad::Tensor& ahat, const Matrix& target,
                         const EdgeWeightMatrix& weights) {
  if (ahat.rows() != weights.size()) {
    throw std::invalid_argument("StructureLoss: weight matrix size mismatch");
  }
  return StructureLoss(ahat, target, weights.Dense(), weights.pair_count());
}

ad::Tensor StructureLoss(const ad::Tensor& ahat, const Matrix& target,
                         const Matrix& dense_weights, double pair_count) {
  return ad::WeightedBce(ahat, target, dense_weights, pair_count);
}

std::vector<ad::PairSample> SampleStructurePairs(const SparseGraph& g,
                                                 const EdgeWeightMatrix& weights,
                                                 std::size_t samples, bool diagonal_is_edge,
                                                 std::mt19937_64& rng) {
  const Index n = g.n_nodes();
  if (n == 0 || samples == 0) return {};
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::vector<ad::PairSample> out;
  out.reserve(samples);
  const SparseMatrix& a = g.adjacency();
  while (out.size() < samples) {
    const Index i = pick(rng);
    const Index j = pick(rng);
    const double w = weights.at(i, j);
    if (w == 0.0) continue;
    double target = 0.0;
    if (i == j) {
      target = diagonal_is_edge ? 1.0 : 0.0;
    } else {
      const auto* begin = a.innerIndexPtr() + a.outerIndexPtr()[i];
      const auto* end = a.innerIndexPtr() + a.outerIndexPtr()[i + 1];
      target = std::binary_search(begin, end, static_cast<int>(j)) ? 1.0 : 0.0;
    }
    out.push_back({i, j, target, w});
  }
  return out;
}

ad::Tensor SampledStructureLoss(const ad::Tensor& zs, std::span<const ad::PairSample> pairs) {
  return ad::PairBceFromEmbeddings(zs, pairs);
}

}  // namespace amgae
