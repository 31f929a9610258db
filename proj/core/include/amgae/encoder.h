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

#include <string>
#include <vector>

#include "amgae/autodiff/tensor.h"
#include "amgae/graph.h"

namespace amgae {

enum class Activation { kRelu, kLinear };

// Bias-free GCN layers Z(l) = act(adj * Z(l-1) * W(l)).
//
// Widths are fixed at construction; weights start at zero and are filled by
// XavierInit. Copies of a stack share its Parameters, which is how the main
// branch and every path branch stay weight-tied.
class GcnStack {
 public:
  GcnStack() = default;
  // dims = {in, hidden..., out}. Hidden layers use ReLU, the last `last`.
  GcnStack(const std::string& prefix, std::vector<Index> dims,
           Activation last = Activation::kLinear);

  std::size_t depth() const { return weights_.size(); }
  Index input_dim() const { return dims_.front(); }
  Index output_dim() const { return dims_.back(); }
  const std::vector<Index>& dims() const { return dims_; }
  Activation activation(std::size_t layer) const { return activations_.at(layer); }

  std::vector<ad::Parameter>& weights() { return weights_; }
  const std::vector<ad::Parameter>& weights() const { return weights_; }

  // Fresh Parameters holding the same values (pseudo-siamese twin).
  GcnStack Clone(const std::string& prefix) const;

 private:
  std::vector<Index> dims_;
  std::vector<Activation> activations_;
  std::vector<ad::Parameter> weights_;
};

using DecoderStack = GcnStack;

// x0 * W(1): the first-layer projection, independent of the adjacency, so
// branches that share a stack can share it too.
ad::Tensor ProjectInput(const GcnStack& stack, const ad::Tensor& x0);
ad::Tensor ProjectInput(const GcnStack& stack, const ConstantMatrix& x0);

// Runs every layer given the first-layer projection.
ad::Tensor Propagate(const ConstantMatrix& adj, const ad::Tensor& projected,
                     const GcnStack& stack);

ad::Tensor Encode(const ConstantMatrix& adj, const ad::Tensor& x0, const GcnStack& stack);
ad::Tensor Encode(const ConstantMatrix& adj, const ConstantMatrix& x0, const GcnStack& stack);

// One latent matrix per masked order, all through the same stack.
std::vector<ad::Tensor> EncodePaths(const MaskedAdjacencySet& masked, const ad::Tensor& x0,
                                    const GcnStack& stack);
std::vector<ad::Tensor> EncodePaths(const MaskedAdjacencySet& masked, const ConstantMatrix& x0,
                                    const GcnStack& stack);
std::vector<ad::Tensor> PropagatePaths(const MaskedAdjacencySet& masked,
                                       const ad::Tensor& projected, const GcnStack& stack);

ad::Tensor Decode(const ConstantMatrix& adj, const ad::Tensor& zf, const DecoderStack& stack);

}  // namespace amgae
