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


// End-to-end runs: train on a masked dataset, then score the reconstruction.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amgae/classify.h"
#include "amgae/dataset.h"
#include "amgae/metrics.h"
#include "amgae/train.h"

namespace amgae {

struct ModelVariant {
  std::string name;
  bool enable_dca = true;
  bool enable_hsr = true;
  bool pseudo_siamese = false;
};

// "gae" (zero-fill baseline), "dca", "hsr", "ps" and "full", in that order.
// "ps" is the full model with an independent path encoder.
std::vector<ModelVariant> AblationVariants();
std::optional<ModelVariant> FindVariant(const std::string& name);
TrainConfig WithVariant(TrainConfig cfg, const ModelVariant& v);

struct ExperimentOptions {
  std::vector<std::size_t> ks = {10, 20, 50};
  bool profile = true;   // skipped anyway for real-valued attributes
  bool classify = true;
  ClassifierConfig classifier;
  TrainCallback on_iter;
};

struct ExperimentResult {
  TrainResult train;
  double train_seconds = 0.0;
  std::optional<ProfileReport> profile;
  std::optional<ClassificationReport> classification;
};

// Trains on the split's attribute-observed rows and evaluates X-hat. The
// classifier folds come from the split, so every variant sees the same ones.
ExperimentResult RunExperiment(const DatasetBundle& bundle, const DataSplit& split,
                               const TrainConfig& cfg, const ExperimentOptions& opts = {});

// Scores a given reconstruction without training.
ExperimentResult EvaluateReconstruction(const DatasetBundle& bundle, const DataSplit& split,
                                        const Matrix& xhat, const ExperimentOptions& opts = {});

}  // namespace amgae
