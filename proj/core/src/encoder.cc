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

#include "amgae/encoder.h"

#include <stdexcept>

#include "amgae/autodiff/ops.h"

namespace amgae {
namespace {

void CheckInputWidth(const GcnStack& stack, Index cols) {
  if (stack.depth() == 0) throw std::invalid_argument("GcnStack: no layers");
  if (cols != stack.input_dim()) {
    throw std::invalid_argument("GcnStack: input width " + std::to_string(cols) +
                                " does not match first layer width " +
                                std::to_string(stack.input_dim()));
  }
}

ad::Tensor Activate(const ad::Tensor& x, Activation act) {
  return act == Activation::kRelu ? ad::Relu(x) : x;
}

}  // namespace

GcnStack::GcnStack(const std::string& prefix, std::vector<Index> dims, Activation last)
    : dims_(std::move(dims)) {
  if (dims_.size() < 2) throw std::invalid_argument("GcnStack: need at least two widths");
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    if (dims_[l] <= 0 || dims_[l + 1] <= 0) {
      throw std::invalid_argument("GcnStack: widths must be positive");
    }
    weights_.emplace_back(prefix + "." + std::to_string(l),
                          Matrix::Zero(dims_[l], dims_[l + 1]));
    activations_.push_back(l + 2 == dims_.size() ? last : Activation::kRelu);
  }
}

GcnStack GcnStack::Clone(const std::string& prefix) const {
  GcnStack out = *this;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    out.weights_[l] = weights_[l].Clone(prefix + "." + std::to_string(l));
  }
  return out;
}

ad::Tensor ProjectInput(const GcnStack& stack, const ad::Tensor& x0) {
  CheckInputWidth(stack, x0.cols());
  return ad::MatMul(x0, stack.weights().front());
}

ad::Tensor ProjectInput(const GcnStack& stack, const ConstantMatrix& x0) {
  CheckInputWidth(stack, x0.cols());
  return ad::SparseMatMul(x0, stack.weights().front());
}

ad::Tensor Propagate(const ConstantMatrix& adj, const ad::Tensor& projected,
                     const GcnStack& stack) {
  ad::Tensor h = Activate(ad::SparseMatMul(adj, projected), stack.activation(0));
  for (std::size_t l = 1; l < stack.depth(); ++l) {
    h = Activate(ad::SparseMatMul(adj, ad::MatMul(h, stack.weights()[l])), stack.activation(l));
  }
  return h;
}

ad::Tensor Encode(const ConstantMatrix& adj, const ad::Tensor& x0, const GcnStack& stack) {
  return Propagate(adj, ProjectInput(stack, x0), stack);
}

ad::Tensor Encode(const ConstantMatrix& adj, const ConstantMatrix& x0, const GcnStack& stack) {
  return Propagate(adj, ProjectInput(stack, x0), stack);
}

std::vector<ad::Tensor> PropagatePaths(const MaskedAdjacencySet& masked,
                                       const ad::Tensor& projected, const GcnStack& stack) {
  if (masked.order() == 0) throw std::invalid_argument("EncodePaths: empty masked set");
  std::vector<ad::Tensor> out;
  out.reserve(masked.order());
  for (const ConstantMatrix& a : masked.matrices) out.push_back(Propagate(a, projected, stack));
  return out;
}

std::vector<ad::Tensor> EncodePaths(const MaskedAdjacencySet& masked, const ad::Tensor& x0,
                                    const GcnStack& stack) {
  if (masked.order() == 0) throw std::invalid_argument("EncodePaths: empty masked set");
  return PropagatePaths(masked, ProjectInput(stack, x0), stack);
}

std::vector<ad::Tensor> EncodePaths(const MaskedAdjacencySet& masked, const ConstantMatrix& x0,
                                    const GcnStack& stack) {
  if (masked.order() == 0) throw std::invalid_argument("EncodePaths: empty masked set");
  return PropagatePaths(masked, ProjectInput(stack, x0), stack);
}

ad::Tensor Decode(const ConstantMatrix& adj, const ad::Tensor& zf, const DecoderStack& stack) {
  return Encode(adj, zf, stack);
}

}  // namespace amgae
