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

// Global similarity aggregation over the latent embedding.
//
// Two sparse indicators are built from the cosine affinity of the current
// latent rows: a plain top-K per row, and a top-K restricted to each node's
// 1..P-hop neighbourhood. The refined embedding mixes both aggregations with
// a learnable weight. Indicators are treated as constants of the iteration
// that built them; top-K selection carries no gradient.

#pragma once

#include <cstddef>
#include <vector>

#include "amgae/autodiff/tensor.h"
#include "amgae/graph.h"

namespace amgae {

// Dense N x N cosine affinity, exactly symmetric.
struct SimilarityMatrix {
  Matrix s;
};

// Sparse N x N matrix holding the kept affinity values.
struct RefinedIndicator {
  ConstantMatrix matrix;
  std::vector<std::vector<Index>> kept;  // per row, ascending
};

// Candidate columns per row for the structure-constrained filter.
using CandidateSets = std::vector<std::vector<Index>>;

// S_ij = <z_i, z_j> / (|z_i| |z_j|); rows and columns of zero-norm nodes are 0
// and the diagonal of every other node is exactly 1.
SimilarityMatrix CosineSimilarity(const Matrix& z);

// Keeps the k largest off-diagonal entries of each row; ties go to the lower
// column index. Throws std::invalid_argument unless 1 <= k < N.
RefinedIndicator KnnFilter(const SimilarityMatrix& s, std::size_t k);

// Union of nonzero columns of rows of A^1..A^p, without the node itself.
CandidateSets HopCandidates(const OrderedAdjacencySet& powers, std::size_t p);

// Top-k per row among that row's candidates only. A row with fewer than k
// candidates keeps all of them; a row with none keeps nothing.
RefinedIndicator StructureConstrainedFilter(const SimilarityMatrix& s,
                                            const CandidateSets& candidates, std::size_t k);
RefinedIndicator StructureConstrainedFilter(const SimilarityMatrix& s,
                                            const OrderedAdjacencySet& powers, std::size_t p,
                                            std::size_t k);

// Each kept row divided by the sum of its absolute values.
RefinedIndicator RowNormalized(const RefinedIndicator& in);

// alpha * S^N z + (1 - alpha) * S'^N z.
ad::Tensor DcaAggregate(const ad::Tensor& z, const RefinedIndicator& knn,
                        const RefinedIndicator& structural, const ad::Tensor& alpha);

}  // namespace amgae
