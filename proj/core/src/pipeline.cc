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


#include "amgae/pipeline.h"

#include <chrono>
#include <stdexcept>

namespace amgae {

std::vector<ModelVariant> AblationVariants() {
  return {
      {"gae", false, false, false},
      {"dca", true, false, false},
      {"hsr", false, true, false},
      {"ps", true, true, true},
      {"full", true, true, false},
  };
}

std::optional<ModelVariant> FindVariant(const std::string& name) {
  for (const ModelVariant& v : AblationVariants()) {
    if (v.name == name) return v;
  }
  return std::nullopt;
}

TrainConfig WithVariant(TrainConfig cfg, const ModelVariant& v) {
  cfg.enable_dca = v.enable_dca;
  cfg.enable_hsr = v.enable_hsr;
  cfg.pseudo_siamese = v.pseudo_siamese;
  return cfg;
}

ExperimentResult EvaluateReconstruction(const DatasetBundle& bundle, const DataSplit& split,
                                        const Matrix& xhat, const ExperimentOptions& opts) {
  if (xhat.rows() != bundle.n_nodes() || xhat.cols() != bundle.n_dims()) {
    throw std::invalid_argument("EvaluateReconstruction: reconstruction shape does not match");
  }
  ExperimentResult r;
  const AttributeMatrix truth = MaskedAttributes(bundle, split);
  if (opts.profile && IsCategorical(bundle.x) && truth.n_missing() > 0) {
    r.profile = ProfileEval(xhat, truth, opts.ks);
  }
  if (opts.classify) {
    ClassifierConfig cc = opts.classifier;
    cc.folds = split.spec.folds;
    cc.repeats = split.folds.size();
    r.classification = ClassifyNodes(bundle.graph, xhat, bundle.labels, split.folds, cc);
  }
  return r;
}

ExperimentResult RunExperiment(const DatasetBundle& bundle, const DataSplit& split,
                               const TrainConfig& cfg, const ExperimentOptions& opts) {
  const AttributeMatrix masked = MaskedAttributes(bundle, split);
  const auto start = std::chrono::steady_clock::now();
  TrainResult trained = Train(bundle.graph, masked, cfg, opts.on_iter);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ExperimentResult r = EvaluateReconstruction(bundle, split, trained.xhat, opts);
  r.train = std::move(trained);
  r.train_seconds = seconds;
  return r;
}

}  // namespace amgae
