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

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "amgae/types.h"

namespace amgae::ad {

// A node of the reverse-mode graph. Interior nodes own a backward rule that
// receives the node's output gradient and accumulates into its inputs.
struct Node {
  using BackwardFn = std::function<void(const Matrix& grad_out)>;

  Matrix value;
  Matrix grad;  // empty until something accumulates into it
  bool requires_grad = false;
  bool is_leaf = true;
  std::vector<std::shared_ptr<Node>> inputs;
  BackwardFn backward;

  void Accumulate(const Matrix& g);
  template <typename Expr>
  void AccumulateExpr(const Expr& g) {
    if (grad.size() == 0) {
      grad = g;
    } else {
      grad += g;
    }
  }
};

// Handle to a node. Copies alias the same node.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Matrix value, bool requires_grad = false);

  static Tensor Scalar(double v, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  Index rows() const { return node_->value.rows(); }
  Index cols() const { return node_->value.cols(); }
  bool is_scalar() const { return rows() == 1 && cols() == 1; }
  bool requires_grad() const { return node_->requires_grad; }

  const Matrix& value() const { return node_->value; }
  double item() const;

  // Gradient accumulated so far; a zero matrix when nothing reached it.
  Matrix grad() const;
  bool has_grad() const { return node_->grad.size() != 0; }
  void ZeroGrad();

  // A constant copy cut off from the graph.
  Tensor Detach() const;

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& shared_node() const { return node_; }

  // Builds an interior node. The backward rule is dropped when no input
  // requires a gradient.
  static Tensor FromOp(Matrix value, std::vector<Tensor> inputs, Node::BackwardFn backward);

 private:
  friend class Parameter;
  std::shared_ptr<Node> node_;
};

// A named trainable leaf. Optimizers update `mutable_value()` in place.
class Parameter {
 public:
  Parameter() = default;
  Parameter(std::string name, Matrix init);

  const std::string& name() const { return name_; }
  const Tensor& tensor() const { return tensor_; }
  operator const Tensor&() const { return tensor_; }  // NOLINT(google-explicit-constructor)

  const Matrix& value() const { return tensor_.value(); }
  Matrix& mutable_value() { return tensor_.node()->value; }
  Matrix grad() const { return tensor_.grad(); }
  void ZeroGrad() { tensor_.ZeroGrad(); }

  // Independent copy with the same name and value.
  Parameter Clone(std::string new_name) const;

 private:
  std::string name_;
  Tensor tensor_;
};

// Propagates d(loss)/d(node) to every reachable node that requires a
// gradient. Gradients accumulate; call ZeroGrad on parameters between steps.
// Throws std::invalid_argument unless `loss` is 1x1.
void Backward(const Tensor& loss);

}  // namespace amgae::ad
