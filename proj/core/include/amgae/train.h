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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amgae/graph.h"
#include "amgae/model.h"

namespace amgae {

struct TrainLogRecord {
  std::size_t iter = 0;
  double loss_attr = 0.0;
  double loss_struct = 0.0;  // 0 when the structure branch is off
  double loss_total = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

// One JSON object per line: {"iter":..,"loss_attr":..,...}.
std::string ToJsonLine(const TrainLogRecord& r);

// Thrown when a loss becomes non-finite.
class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(std::size_t iter, const std::string& detail);
  std::size_t iter() const { return iter_; }

 private:
  std::size_t iter_;
};

struct TrainResult {
  ModelParams params;
  Matrix xhat;  // decoder output after the last update
  std::vector<TrainLogRecord> log;
  std::size_t iterations = 0;
  bool early_stopped = false;
};

using TrainCallback = std::function<void(const TrainLogRecord&)>;

// Full-batch training with Adam. Each iteration runs the forward pass, records
// the losses, and applies one update. Stops at max_iters, or once at least
// min_iters iterations are done and the best total loss has not improved by
// a relative plateau_tol for `patience` iterations.
TrainResult Train(const SparseGraph& graph, const AttributeMatrix& attributes,
                  const TrainConfig& cfg, const TrainCallback& on_iter = {});

// Same, on prepared inputs and an already initialized model.
TrainResult Train(const ModelInputs& inputs, ModelParams params, const TrainConfig& cfg,
                  const TrainCallback& on_iter = {});

// Decoder output for fixed parameters (fresh filters, no gradient use).
Matrix Reconstruct(const ModelParams& params, const ModelInputs& inputs, const TrainConfig& cfg);

}  // namespace amgae
