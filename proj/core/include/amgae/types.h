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
#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace amgae {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

// One flag per node; true marks an attribute-observed node.
using NodeMask = std::vector<bool>;

// Immutable matrix held either in CSR form or densely. Copies share storage,
// so handing one to a computation graph costs a reference count.
class ConstantMatrix {
 public:
  ConstantMatrix() = default;

  static ConstantMatrix FromSparse(SparseMatrix m);
  static ConstantMatrix FromDense(Matrix m);
  static ConstantMatrix Identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  bool empty() const { return !sparse_ && !dense_; }
  bool is_dense() const { return dense_ != nullptr; }

  // Structural nonzero count (dense storage counts entries != 0).
  Index nonzeros() const;
  double fill_ratio() const;

  const SparseMatrix* sparse() const { return sparse_.get(); }
  const Matrix* dense() const { return dense_.get(); }

  double coeff(Index i, Index j) const;

  // this * x
  Matrix Multiply(const Matrix& x) const;
  // this^T * x
  Matrix TransposeMultiply(const Matrix& x) const;

  Matrix ToDense() const;
  SparseMatrix ToSparse() const;

  // Calls f(col, value) for every nonzero in row i, in ascending column order.
  template <typename F>
  void ForEachInRow(Index i, F&& f) const {
    if (sparse_) {
      for (SparseMatrix::InnerIterator it(*sparse_, i); it; ++it) {
        f(it.col(), it.value());
      }
    } else if (dense_) {
      for (Index j = 0; j < cols_; ++j) {
        const double v = (*dense_)(i, j);
        if (v != 0.0) f(j, v);
      }
    }
  }

 private:
  std::shared_ptr<const SparseMatrix> sparse_;
  std::shared_ptr<const Matrix> dense_;
  Index rows_ = 0;
  Index cols_ = 0;
};

}  // namespace amgae
