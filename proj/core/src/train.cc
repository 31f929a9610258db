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

#include "amgae/train.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "amgae/adam.h"
#include "amgae/autodiff/ops.h"

namespace amgae {

std::string ToJsonLine(const TrainLogRecord& r) {
  return fmt::format(
      "{{\"iter\":{},\"loss_attr\":{:.17g},\"loss_struct\":{:.17g},\"loss_total\":{:.17g},"
      "\"alpha\":{:.17g},\"beta\":{:.17g}}}",
      r.iter, r.loss_attr, r.loss_struct, r.loss_total, r.alpha, r.beta);
}

TrainingDiverged::TrainingDiverged(std::size_t iter, const std::string& detail)
    : std::runtime_error(fmt::format("training diverged at iteration {}: {}", iter, detail)),
      iter_(iter) {}

TrainResult Train(const SparseGraph& graph, const AttributeMatrix& attributes,
                  const TrainConfig& cfg, const TrainCallback& on_iter) {
  const ModelInputs inputs = PrepareInputs(graph, attributes, cfg);
  ModelParams params = BuildModel(attributes.n_dims(), cfg);
  XavierInit(params, cfg.seed);
  return Train(inputs, std::move(params), cfg, on_iter);
}

TrainResult Train(const ModelInputs& inputs, ModelParams params, const TrainConfig& cfg,
                  const TrainCallback& on_iter) {
  cfg.Validate();
  Adam::Options opt;
  opt.lr = cfg.lr;
  Adam adam(params.Trainable(cfg), opt);
  // Separate stream from the initializer so toggling sampling leaves init alone.
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  TrainResult result;
  std::optional<Filters> filters;
  double best = std::numeric_limits<double>::infinity();
  std::size_t stall = 0;

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    if (it % cfg.refresh_every == 0) filters.reset();
    ForwardResult fwd;
    try {
      fwd = Forward(params, inputs, cfg, filters, rng);
    } catch (const std::domain_error& e) {
      throw TrainingDiverged(it, e.what());
    }

    TrainLogRecord rec;
    rec.iter = it;
    rec.loss_attr = fwd.loss_attr.item();
    rec.loss_struct = fwd.loss_struct.defined() ? fwd.loss_struct.item() : 0.0;
    rec.loss_total = fwd.loss_total.item();
    rec.alpha = params.alpha.value()(0, 0);
    rec.beta = params.beta.value()(0, 0);
    if (!std::isfinite(rec.loss_total)) {
      throw TrainingDiverged(it, fmt::format("loss_attr={} loss_struct={}", rec.loss_attr,
                                             rec.loss_struct));
    }
    result.log.push_back(rec);
    if (on_iter) on_iter(rec);

    adam.ZeroGrad();
    ad::Backward(fwd.loss_total);
    adam.Step();
    result.iterations = it + 1;

    if (rec.loss_total < best - cfg.plateau_tol * std::abs(best) || !std::isfinite(best)) {
      best = rec.loss_total;
      stall = 0;
    } else {
      ++stall;
    }
    if (result.iterations >= cfg.min_iters && stall >= cfg.patience) {
      result.early_stopped = result.iterations < cfg.max_iters;
      break;
    }
  }

  result.xhat = Reconstruct(params, inputs, cfg);
  result.params = std::move(params);
  return result;
}

Matrix Reconstruct(const ModelParams& params, const ModelInputs& inputs, const TrainConfig& cfg) {
  // The structure loss is irrelevant here; skip the N x N decode.
  TrainConfig eval_cfg = cfg;
  eval_cfg.pair_samples = std::max<std::size_t>(cfg.pair_samples, 1);
  std::optional<Filters> filters;
  std::mt19937_64 rng(cfg.seed);
  return Forward(params, inputs, eval_cfg, filters, rng).xhat.value();
}

}  // namespace amgae
