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

#include "amgae/autodiff/tensor.h"

#include <stdexcept>
#include <unordered_set>

namespace amgae::ad {

void Node::Accumulate(const Matrix& g) {
  if (grad.size() == 0) {
    grad = g;
  } else {
    grad += g;
  }
}

Tensor::Tensor(Matrix value, bool requires_grad) : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

Tensor Tensor::Scalar(double v, bool requires_grad) {
  return Tensor(Matrix::Constant(1, 1, v), requires_grad);
}

double Tensor::item() const {
  if (!is_scalar()) throw std::logic_error("Tensor::item on non-scalar tensor");
  return node_->value(0, 0);
}

Matrix Tensor::grad() const {
  if (node_->grad.size() == 0) return Matrix::Zero(rows(), cols());
  return node_->grad;
}

void Tensor::ZeroGrad() { node_->grad.resize(0, 0); }

Tensor Tensor::Detach() const { return Tensor(node_->value, false); }

Tensor Tensor::FromOp(Matrix value, std::vector<Tensor> inputs, Node::BackwardFn backward) {
  Tensor out(std::move(value), false);
  out.node_->is_leaf = false;
  bool needs = false;
  for (const Tensor& t : inputs) needs = needs || t.requires_grad();
  if (needs) {
    out.node_->requires_grad = true;
    out.node_->inputs.reserve(inputs.size());
    for (const Tensor& t : inputs) out.node_->inputs.push_back(t.node_);
    out.node_->backward = std::move(backward);
  }
  return out;
}

Parameter::Parameter(std::string name, Matrix init)
    : name_(std::move(name)), tensor_(std::move(init), true) {}

Parameter Parameter::Clone(std::string new_name) const {
  return Parameter(std::move(new_name), value());
}

void Backward(const Tensor& loss) {
  if (!loss.defined() || !loss.is_scalar()) {
    throw std::invalid_argument("Backward: loss must be a 1x1 tensor");
  }
  if (!loss.requires_grad()) return;

  // Iterative post-order DFS gives a topological order (inputs first).
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack;
  stack.emplace_back(loss.node(), 0);
  visited.insert(loss.node());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->inputs.size()) {
      Node* child = node->inputs[next++].get();
      if (child->requires_grad && visited.insert(child).second) {
        stack.emplace_back(child, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  loss.node()->Accumulate(Matrix::Ones(1, 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (node->is_leaf || !node->backward || node->grad.size() == 0) continue;
    node->backward(node->grad);
    // Interior gradients are not needed once propagated.
    node->grad.resize(0, 0);
  }
}

}  // namespace amgae::ad
