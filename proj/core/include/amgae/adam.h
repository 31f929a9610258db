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
#include <vector>

#include "amgae/autodiff/tensor.h"

namespace amgae {

// Adam with bias correction. Holds one pair of moment buffers per parameter.
class Adam {
 public:
  struct Options {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    // L2 penalty folded into the gradient (coupled, not decoupled, decay).
    double weight_decay = 0.0;
  };

  // Parameters alias their nodes, so updates are visible through every copy.
  // Throws std::invalid_argument on a repeated parameter.
  Adam(std::vector<ad::Parameter> params, Options options);

  // Applies one update from the gradients currently held by the parameters.
  // A parameter without a gradient is treated as having a zero gradient.
  void Step();
  void ZeroGrad();

  std::size_t step_count() const { return step_; }
  const Options& options() const { return options_; }
  const std::vector<ad::Parameter>& params() const { return params_; }

 private:
  std::vector<ad::Parameter> params_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  Options options_;
  std::size_t step_ = 0;
};

}  // namespace amgae
