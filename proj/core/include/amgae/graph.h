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

#include <cstddef>
#include <utility>
#include <vector>

#include "amgae/types.h"

namespace amgae {

using Edge = std::pair<Index, Index>;

// Undirected, unweighted graph without self-loops. Edges are stored once as
// (i, j) with i < j, sorted; `adjacency()` is the symmetric binary matrix A.
class SparseGraph {
 public:
  struct BuildStats {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
  };

  SparseGraph() = default;

  // Builds from an arbitrary edge list. Either orientation of an edge may
  // appear; repeats and self-loops are dropped and counted in `stats`.
  // Throws std::invalid_argument on an index outside [0, n_nodes).
  static SparseGraph FromEdges(Index n_nodes, const std::vector<Edge>& edges,
                               BuildStats* stats = nullptr);

  Index n_nodes() const { return n_nodes_; }
  std::size_t n_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const SparseMatrix& adjacency() const { return adjacency_; }
  Index degree(Index i) const;

  // A as a dense 0/1 matrix.
  Matrix DenseAdjacency() const;

 private:
  Index n_nodes_ = 0;
  std::vector<Edge> edges_;
  SparseMatrix adjacency_;
};

// Dense attributes plus the observed-node mask.
class AttributeMatrix {
 public:
  AttributeMatrix() = default;
  AttributeMatrix(Matrix x, NodeMask observed);

  const Matrix& x() const { return x_; }
  const NodeMask& observed() const { return observed_; }
  Index n_nodes() const { return x_.rows(); }
  Index n_dims() const { return x_.cols(); }
  Index n_observed() const { return n_observed_; }
  Index n_missing() const { return n_nodes() - n_observed_; }
  bool is_observed(Index i) const { return observed_[static_cast<std::size_t>(i)]; }

  std::vector<Index> observed_nodes() const;
  std::vector<Index> missing_nodes() const;

  // X with every missing row replaced by zeros.
  Matrix ZeroFilled() const;
  SparseMatrix ZeroFilledSparse() const;

  AttributeMatrix WithMask(NodeMask observed) const;

 private:
  Matrix x_;
  NodeMask observed_;
  Index n_observed_ = 0;
};

struct NormalizedAdjacency {
  ConstantMatrix matrix;
};

// [A^1, ..., A^H], with A^1 the normalized adjacency.
struct OrderedAdjacencySet {
  std::vector<ConstantMatrix> matrices;

  std::size_t order() const { return matrices.size(); }
  const ConstantMatrix& power(std::size_t h) const { return matrices.at(h - 1); }
};

struct MaskedAdjacencySet {
  std::vector<ConstantMatrix> matrices;
  // Positions (i, j) zeroed in at least one order, sorted ascending.
  std::vector<Edge> mask_pairs;

  std::size_t order() const { return matrices.size(); }
  const ConstantMatrix& power(std::size_t h) const { return matrices.at(h - 1); }
};

// D^-1/2 (A + I) D^-1/2 with D the degree matrix of A + I.
NormalizedAdjacency NormalizeAdjacency(const SparseGraph& g);

// A^1 = a1 and A^h = a1 * A^(h-1). A power whose fill ratio exceeds
// `dense_fill_ratio` is stored densely, as are all later powers.
OrderedAdjacencySet AdjacencyPowers(const NormalizedAdjacency& a1, std::size_t h_max,
                                    double dense_fill_ratio = 0.25);

// Zeros every off-diagonal entry (i, j) with both endpoints attribute-missing.
MaskedAdjacencySet MaskMissingEdges(const OrderedAdjacencySet& set, const NodeMask& observed);

}  // namespace amgae
