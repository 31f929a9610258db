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

// The full model: a weight-shared GCN encoder feeding a similarity
// aggregation branch and a multi-order structure branch, a learnable blend of
// the two, and a GCN decoder back to attribute space.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "amgae/autodiff/tensor.h"
#include "amgae/dca.h"
#include "amgae/encoder.h"
#include "amgae/graph.h"
#include "amgae/hsr.h"

namespace amgae {

struct TrainConfig {
  std::size_t p = 5;        // hop radius for the structure-constrained filter
  std::size_t k = 5;        // entries kept per row by both filters
  double gamma = 5.0;       // weight of missing-missing pairs in the structure loss
  double lambda = 10.0;     // weight of the attribute loss
  std::size_t h = 3;        // number of adjacency orders in the structure branch
  double lr = 1e-3;

  std::size_t max_iters = 1000;
  std::size_t min_iters = 500;  // early stop never fires before this many iterations
  std::size_t patience = 50;
  double plateau_tol = 1e-4;    // relative improvement that resets patience
  std::uint64_t seed = 0;

  std::vector<Index> encoder_hidden = {256};
  Index latent_dim = 64;
  std::vector<Index> decoder_hidden = {256};

  bool enable_dca = true;
  bool enable_hsr = true;
  bool pseudo_siamese = false;

  std::size_t refresh_every = 1;       // rebuild the similarity filters every n iterations
  bool row_normalize_filters = false;
  bool exclude_diagonal = false;       // drop (i, i) pairs from the structure loss
  std::size_t pair_samples = 0;        // > 0: subsampled structure loss
  double dense_fill_ratio = 0.25;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

struct ModelParams {
  GcnStack encoder;
  // Same Parameters as `encoder` unless the pseudo-siamese variant is on.
  GcnStack path_encoder;
  DecoderStack decoder;
  PathAttention attention;
  ad::Parameter alpha;
  ad::Parameter beta;
  bool independent_paths = false;

  // Parameters that the enabled branches actually use, each listed once.
  std::vector<ad::Parameter> Trainable(const TrainConfig& cfg) const;
  // Every parameter, each listed once, in a stable order.
  std::vector<ad::Parameter> All() const;
};

ModelParams BuildModel(Index input_dim, const TrainConfig& cfg);

// Uniform(+-sqrt(6 / (fan_in + fan_out))) for every weight matrix, zero
// attention biases, alpha = beta = 0.5. A pseudo-siamese path encoder starts
// as a copy of the encoder.
void XavierInit(ModelParams& params, std::uint64_t seed);

// beta * za + (1 - beta) * zs.
ad::Tensor Fuse(const ad::Tensor& za, const ad::Tensor& zs, const ad::Tensor& beta);

// Squared error over observed rows, normalized by N_o * D.
ad::Tensor AttributeLoss(const ad::Tensor& xhat, const Matrix& xtilde, const NodeMask& observed);

// lambda * la + ls.
ad::Tensor TotalLoss(const ad::Tensor& la, const ad::Tensor& ls, double lambda);

// Everything the forward pass needs that does not change during training.
struct ModelInputs {
  SparseGraph graph;
  NodeMask observed;
  ConstantMatrix adjacency;        // normalized A with self-loops
  OrderedAdjacencySet powers;      // orders 1..max(h, p)
  MaskedAdjacencySet masked;       // orders 1..h, missing-missing entries removed
  CandidateSets candidates;        // 1..p hop neighbourhoods
  ConstantMatrix x0;               // zero-filled attributes, sparse
  Matrix xtilde;                   // zero-filled attributes, dense
  Matrix structure_target;         // empty when pair sampling is on
  Matrix structure_weights;        // empty when pair sampling is on
  double pair_count = 0.0;
  std::optional<EdgeWeightMatrix> edge_weights;
};

// `attributes` carries the zero-filled view through its mask; rows of missing
// nodes are ignored whatever they hold.
ModelInputs PrepareInputs(const SparseGraph& graph, const AttributeMatrix& attributes,
                          const TrainConfig& cfg);

struct Filters {
  RefinedIndicator knn;
  RefinedIndicator structural;
};

Filters BuildFilters(const Matrix& z, const ModelInputs& inputs, const TrainConfig& cfg);

struct ForwardResult {
  ad::Tensor z;           // encoder output on the full graph
  ad::Tensor za;          // after similarity aggregation (z when disabled)
  ad::Tensor zs;          // fused path embedding (undefined when disabled)
  ad::Tensor attention;   // N x H path weights (undefined when disabled)
  ad::Tensor ahat;        // dense adjacency estimate (undefined when disabled or sampled)
  ad::Tensor zf;
  ad::Tensor xhat;
  ad::Tensor loss_attr;
  ad::Tensor loss_struct;  // undefined when the structure branch is off
  ad::Tensor loss_total;
};

// One forward pass. `filters` is rebuilt from the current latent when empty
// and reused otherwise; `rng` feeds the pair sampler.
ForwardResult Forward(const ModelParams& params, const ModelInputs& inputs,
                      const TrainConfig& cfg, std::optional<Filters>& filters,
                      std::mt19937_64& rng);

}  // namespace amgae
