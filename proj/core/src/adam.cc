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

#include "amgae/adam.h"

#include <cmath>
#include <set>
#include <stdexcept>

namespace amgae {

Adam::Adam(std::vector<ad::Parameter> params, Options options)
    : params_(std::move(params)), options_(options) {
  std::set<const ad::Node*> seen;
  for (const ad::Parameter& p : params_) {
    if (!seen.insert(p.tensor().node()).second) {
      throw std::invalid_argument("Adam: parameter '" + p.name() + "' registered twice");
    }
    m_.push_back(Matrix::Zero(p.value().rows(), p.value().cols()));
    v_.push_back(Matrix::Zero(p.value().rows(), p.value().cols()));
  }
}

void Adam::Step() {
  ++step_;
  const double t = static_cast<double>(step_);
  const double c1 = 1.0 - std::pow(options_.beta1, t);
  const double c2 = 1.0 - std::pow(options_.beta2, t);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    ad::Parameter& p = params_[i];
    Matrix g = p.grad();
    if (options_.weight_decay != 0.0) g += options_.weight_decay * p.value();
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * g;
    v_[i] = options_.beta2 * v_[i] + (1.0 - options_.beta2) * g.cwiseProduct(g);
    p.mutable_value().array() -=
        options_.lr * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + options_.eps);
  }
}

void Adam::ZeroGrad() {
  for (ad::Parameter& p : params_) p.ZeroGrad();
}

}  // namespace amgae
