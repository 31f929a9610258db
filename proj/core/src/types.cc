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

#include "amgae/types.h"

#include <stdexcept>

namespace amgae {

ConstantMatrix ConstantMatrix::FromSparse(SparseMatrix m) {
  m.makeCompressed();
  ConstantMatrix out;
  out.rows_ = m.rows();
  out.cols_ = m.cols();
  out.sparse_ = std::make_shared<const SparseMatrix>(std::move(m));
  return out;
}

ConstantMatrix ConstantMatrix::FromDense(Matrix m) {
  ConstantMatrix out;
  out.rows_ = m.rows();
  out.cols_ = m.cols();
  out.dense_ = std::make_shared<const Matrix>(std::move(m));
  return out;
}

ConstantMatrix ConstantMatrix::Identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return FromSparse(std::move(id));
}

Index ConstantMatrix::nonzeros() const {
  if (sparse_) return sparse_->nonZeros();
  if (dense_) return static_cast<Index>((dense_->array() != 0.0).count());
  return 0;
}

double ConstantMatrix::fill_ratio() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nonzeros()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

double ConstantMatrix::coeff(Index i, Index j) const {
  if (sparse_) return sparse_->coeff(i, j);
  if (dense_) return (*dense_)(i, j);
  throw std::out_of_range("ConstantMatrix::coeff on empty matrix");
}

Matrix ConstantMatrix::Multiply(const Matrix& x) const {
  if (x.rows() != cols_) throw std::invalid_argument("ConstantMatrix::Multiply: shape mismatch");
  if (sparse_) return Matrix(*sparse_ * x);
  if (dense_) return Matrix(*dense_ * x);
  return Matrix::Zero(rows_, x.cols());
}

Matrix ConstantMatrix::TransposeMultiply(const Matrix& x) const {
  if (x.rows() != rows_) {
    throw std::invalid_argument("ConstantMatrix::TransposeMultiply: shape mismatch");
  }
  if (sparse_) return Matrix(sparse_->transpose() * x);
  if (dense_) return Matrix(dense_->transpose() * x);
  return Matrix::Zero(cols_, x.cols());
}

Matrix ConstantMatrix::ToDense() const {
  if (sparse_) return Matrix(*sparse_);
  if (dense_) return *dense_;
  return Matrix(rows_, cols_);
}

SparseMatrix ConstantMatrix::ToSparse() const {
  if (sparse_) return *sparse_;
  if (dense_) return dense_->sparseView(0.0, 0.0);
  return SparseMatrix(rows_, cols_);
}

}  // namespace amgae
