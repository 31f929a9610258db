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

#include "amgae/graph.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace amgae {

SparseGraph SparseGraph::FromEdges(Index n_nodes, const std::vector<Edge>& edges,
                                   BuildStats* stats) {
  if (n_nodes < 0) throw std::invalid_argument("SparseGraph: negative node count");
  BuildStats local;
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_nodes || b >= n_nodes) {
      throw std::invalid_argument("SparseGraph: edge (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ") outside [0, " +
                                  std::to_string(n_nodes) + ")");
    }
    if (a == b) {
      ++local.self_loops_dropped;
      continue;
    }
    canon.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canon.begin(), canon.end());
  const auto last = std::unique(canon.begin(), canon.end());
  local.duplicates_dropped = static_cast<std::size_t>(canon.end() - last);
  canon.erase(last, canon.end());

  SparseGraph g;
  g.n_nodes_ = n_nodes;
  g.edges_ = std::move(canon);
  std::vector<Triplet> trips;
  trips.reserve(2 * g.edges_.size());
  for (const auto& [a, b] : g.edges_) {
    trips.emplace_back(a, b, 1.0);
    trips.emplace_back(b, a, 1.0);
  }
  g.adjacency_.resize(n_nodes, n_nodes);
  g.adjacency_.setFromTriplets(trips.begin(), trips.end());
  g.adjacency_.makeCompressed();
  if (stats) *stats = local;
  return g;
}

Index SparseGraph::degree(Index i) const {
  return adjacency_.outerIndexPtr()[i + 1] - adjacency_.outerIndexPtr()[i];
}

Matrix SparseGraph::DenseAdjacency() const { return Matrix(adjacency_); }

AttributeMatrix::AttributeMatrix(Matrix x, NodeMask observed)
    : x_(std::move(x)), observed_(std::move(observed)) {
  if (static_cast<Index>(observed_.size()) != x_.rows()) {
    throw std::invalid_argument("AttributeMatrix: mask length " +
                                std::to_string(observed_.size()) + " != rows " +
                                std::to_string(x_.rows()));
  }
  n_observed_ = static_cast<Index>(std::count(observed_.begin(), observed_.end(), true));
}

std::vector<Index> AttributeMatrix::observed_nodes() const {
  std::vector<Index> out;
  for (Index i = 0; i < n_nodes(); ++i) {
    if (is_observed(i)) out.push_back(i);
  }
  return out;
}

std::vector<Index> AttributeMatrix::missing_nodes() const {
  std::vector<Index> out;
  for (Index i = 0; i < n_nodes(); ++i) {
    if (!is_observed(i)) out.push_back(i);
  }
  return out;
}

Matrix AttributeMatrix::ZeroFilled() const {
  Matrix out = x_;
  for (Index i = 0; i < n_nodes(); ++i) {
    if (!is_observed(i)) out.row(i).setZero();
  }
  return out;
}

SparseMatrix AttributeMatrix::ZeroFilledSparse() const {
  std::vector<Triplet> trips;
  for (Index i = 0; i < n_nodes(); ++i) {
    if (!is_observed(i)) continue;
    for (Index j = 0; j < n_dims(); ++j) {
      if (x_(i, j) != 0.0) trips.emplace_back(i, j, x_(i, j));
    }
  }
  SparseMatrix out(n_nodes(), n_dims());
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

AttributeMatrix AttributeMatrix::WithMask(NodeMask observed) const {
  return AttributeMatrix(x_, std::move(observed));
}

NormalizedAdjacency NormalizeAdjacency(const SparseGraph& g) {
  const Index n = g.n_nodes();
  Vector inv_sqrt(n);
  for (Index i = 0; i < n; ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(static_cast<double>(g.degree(i) + 1));
  }
  std::vector<Triplet> trips;
  trips.reserve(2 * g.n_edges() + static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) trips.emplace_back(i, i, inv_sqrt(i) * inv_sqrt(i));
  for (const auto& [a, b] : g.edges()) {
    const double v = inv_sqrt(a) * inv_sqrt(b);
    trips.emplace_back(a, b, v);
    trips.emplace_back(b, a, v);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return {ConstantMatrix::FromSparse(std::move(m))};
}

OrderedAdjacencySet AdjacencyPowers(const NormalizedAdjacency& a1, std::size_t h_max,
                                    double dense_fill_ratio) {
  if (h_max == 0) throw std::invalid_argument("AdjacencyPowers: h_max must be >= 1");
  const ConstantMatrix& base = a1.matrix;
  OrderedAdjacencySet set;
  set.matrices.reserve(h_max);
  set.matrices.push_back(base);
  for (std::size_t h = 2; h <= h_max; ++h) {
    const ConstantMatrix& prev = set.matrices.back();
    ConstantMatrix next;
    if (prev.is_dense() || base.is_dense()) {
      next = ConstantMatrix::FromDense(base.Multiply(prev.ToDense()));
    } else {
      SparseMatrix prod = (*base.sparse()) * (*prev.sparse());
      next = ConstantMatrix::FromSparse(std::move(prod));
      if (next.fill_ratio() > dense_fill_ratio) {
        next = ConstantMatrix::FromDense(next.ToDense());
      }
    }
    set.matrices.push_back(std::move(next));
  }
  return set;
}

MaskedAdjacencySet MaskMissingEdges(const OrderedAdjacencySet& set, const NodeMask& observed) {
  MaskedAdjacencySet out;
  const bool any_missing = std::find(observed.begin(), observed.end(), false) != observed.end();
  std::vector<Edge> removed;
  for (const ConstantMatrix& m : set.matrices) {
    if (static_cast<Index>(observed.size()) != m.rows()) {
      throw std::invalid_argument("MaskMissingEdges: mask length does not match matrix size");
    }
    if (!any_missing) {
      out.matrices.push_back(m);
      continue;
    }
    auto masked = [&](Index i, Index j) {
      return i != j && !observed[static_cast<std::size_t>(i)] &&
             !observed[static_cast<std::size_t>(j)];
    };
    if (m.is_dense()) {
      Matrix d = *m.dense();
      for (Index i = 0; i < d.rows(); ++i) {
        if (observed[static_cast<std::size_t>(i)]) continue;
        for (Index j = 0; j < d.cols(); ++j) {
          if (masked(i, j) && d(i, j) != 0.0) {
            removed.emplace_back(i, j);
            d(i, j) = 0.0;
          }
        }
      }
      out.matrices.push_back(ConstantMatrix::FromDense(std::move(d)));
    } else {
      std::vector<Triplet> trips;
      trips.reserve(static_cast<std::size_t>(m.nonzeros()));
      for (Index i = 0; i < m.rows(); ++i) {
        m.ForEachInRow(i, [&](Index j, double v) {
          if (masked(i, j)) {
            removed.emplace_back(i, j);
          } else {
            trips.emplace_back(i, j, v);
          }
        });
      }
      SparseMatrix s(m.rows(), m.cols());
      s.setFromTriplets(trips.begin(), trips.end());
      out.matrices.push_back(ConstantMatrix::FromSparse(std::move(s)));
    }
  }
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
  out.mask_pairs = std::move(removed);
  return out;
}

}  // namespace amgae
