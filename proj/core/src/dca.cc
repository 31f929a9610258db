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

#include "amgae/dca.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "amgae/autodiff/ops.h"

namespace amgae {
namespace {

// Streams columns in ascending order and keeps the k best by value. A later
// column only displaces a kept one with a strictly larger value, which gives
// ties to the lower index. Returns the kept columns in ascending order.
class TopK {
 public:
  TopK(const double* row, std::size_t k) : row_(row), k_(k) { best_.reserve(k + 1); }

  void Offer(Index j) {
    const double v = row_[j];
    if (best_.size() == k_ && !(v > row_[best_.back()])) return;
    auto pos = best_.end();
    while (pos != best_.begin() && v > row_[*(pos - 1)]) --pos;
    best_.insert(pos, j);
    if (best_.size() > k_) best_.pop_back();
  }

  std::vector<Index> Take() {
    std::sort(best_.begin(), best_.end());
    return std::move(best_);
  }

 private:
  const double* row_;
  std::size_t k_;
  std::vector<Index> best_;  // best first
};

RefinedIndicator Assemble(const Matrix& s, std::vector<std::vector<Index>> kept) {
  const Index n = s.rows();
  std::vector<Triplet> trips;
  for (Index i = 0; i < n; ++i) {
    for (Index j : kept[static_cast<std::size_t>(i)]) trips.emplace_back(i, j, s(i, j));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(trips.begin(), trips.end());
  return {ConstantMatrix::FromSparse(std::move(m)), std::move(kept)};
}

}  // namespace

SimilarityMatrix CosineSimilarity(const Matrix& z) {
  const Index n = z.rows();
  Matrix unit = z;
  std::vector<bool> nonzero(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double norm = z.row(i).norm();
    nonzero[static_cast<std::size_t>(i)] = norm > 0.0;
    if (norm > 0.0) {
      unit.row(i) /= norm;
    } else {
      unit.row(i).setZero();
    }
  }
  Matrix s = Matrix::Zero(n, n);
  s.selfadjointView<Eigen::Upper>().rankUpdate(unit);
  s = s.selfadjointView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    if (nonzero[static_cast<std::size_t>(i)]) s(i, i) = 1.0;
  }
  return {std::move(s)};
}

RefinedIndicator KnnFilter(const SimilarityMatrix& s, std::size_t k) {
  const Index n = s.s.rows();
  if (k == 0 || static_cast<Index>(k) >= n) {
    throw std::invalid_argument("KnnFilter: k must satisfy 1 <= k < N (k=" + std::to_string(k) +
                                ", N=" + std::to_string(n) + ")");
  }
  std::vector<std::vector<Index>> kept(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    TopK top(s.s.row(i).data(), k);
    for (Index j = 0; j < n; ++j) {
      if (j != i) top.Offer(j);
    }
    kept[static_cast<std::size_t>(i)] = top.Take();
  }
  return Assemble(s.s, std::move(kept));
}

CandidateSets HopCandidates(const OrderedAdjacencySet& powers, std::size_t p) {
  if (p == 0) throw std::invalid_argument("HopCandidates: p must be >= 1");
  if (p > powers.order()) {
    throw std::invalid_argument("HopCandidates: p=" + std::to_string(p) +
                                " exceeds available orders " + std::to_string(powers.order()));
  }
  const Index n = powers.power(1).rows();
  CandidateSets out(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    auto& row = out[static_cast<std::size_t>(i)];
    for (std::size_t h = 1; h <= p; ++h) {
      powers.power(h).ForEachInRow(i, [&](Index j, double) {
        if (j != i && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = 1;
          row.push_back(j);
        }
      });
    }
    for (Index j : row) seen[static_cast<std::size_t>(j)] = 0;
    std::sort(row.begin(), row.end());
  }
  return out;
}

RefinedIndicator StructureConstrainedFilter(const SimilarityMatrix& s,
                                            const CandidateSets& candidates, std::size_t k) {
  const Index n = s.s.rows();
  if (k == 0) throw std::invalid_argument("StructureConstrainedFilter: k must be >= 1");
  if (static_cast<Index>(candidates.size()) != n) {
    throw std::invalid_argument("StructureConstrainedFilter: candidate sets do not match N");
  }
  std::vector<std::vector<Index>> kept(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto& cand = candidates[static_cast<std::size_t>(i)];
    if (!std::is_sorted(cand.begin(), cand.end())) {
      throw std::invalid_argument("StructureConstrainedFilter: candidate sets must be ascending");
    }
    TopK top(s.s.row(i).data(), k);
    for (Index j : cand) top.Offer(j);
    kept[static_cast<std::size_t>(i)] = top.Take();
  }
  return Assemble(s.s, std::move(kept));
}

RefinedIndicator StructureConstrainedFilter(const SimilarityMatrix& s,
                                            const OrderedAdjacencySet& powers, std::size_t p,
                                            std::size_t k) {
  if (p == 0) throw std::invalid_argument("StructureConstrainedFilter: p must be >= 1");
  return StructureConstrainedFilter(s, HopCandidates(powers, p), k);
}

RefinedIndicator RowNormalized(const RefinedIndicator& in) {
  SparseMatrix m = in.matrix.ToSparse();
  for (Index i = 0; i < m.outerSize(); ++i) {
    double total = 0.0;
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) total += std::abs(it.value());
    if (total == 0.0) continue;
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) it.valueRef() /= total;
  }
  return {ConstantMatrix::FromSparse(std::move(m)), in.kept};
}

ad::Tensor DcaAggregate(const ad::Tensor& z, const RefinedIndicator& knn,
                        const RefinedIndicator& structural, const ad::Tensor& alpha) {
  return ad::Mix(ad::SparseMatMul(knn.matrix, z), ad::SparseMatMul(structural.matrix, z), alpha);
}

}  // namespace amgae
