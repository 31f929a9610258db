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

#include "amgae/model.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "amgae/autodiff/ops.h"

namespace amgae {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("TrainConfig: " + what);
}

std::vector<Index> Widths(Index in, const std::vector<Index>& hidden, Index out) {
  std::vector<Index> dims = {in};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(out);
  return dims;
}

void FillUniform(Matrix& m, std::mt19937_64& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = dist(rng);
  }
}

void AppendUnique(std::vector<ad::Parameter>& out, std::set<const ad::Node*>& seen,
                  const ad::Parameter& p) {
  if (seen.insert(p.tensor().node()).second) out.push_back(p);
}

}  // namespace

void TrainConfig::Validate() const {
  Require(p >= 1, "p must be >= 1");
  Require(k >= 1, "k must be >= 1");
  Require(h >= 1, "h must be >= 1");
  Require(gamma > 0.0, "gamma must be > 0");
  Require(lambda > 0.0, "lambda must be > 0");
  Require(lr > 0.0, "lr must be > 0");
  Require(max_iters >= 1, "max_iters must be >= 1");
  Require(min_iters <= max_iters, "max_iters (" + std::to_string(max_iters) +
                                      ") must be >= min_iters (" + std::to_string(min_iters) +
                                      ")");
  Require(patience >= 1, "patience must be >= 1");
  Require(plateau_tol >= 0.0, "plateau_tol must be >= 0");
  Require(latent_dim >= 1, "latent_dim must be >= 1");
  for (Index w : encoder_hidden) Require(w >= 1, "encoder widths must be >= 1");
  for (Index w : decoder_hidden) Require(w >= 1, "decoder widths must be >= 1");
  Require(refresh_every >= 1, "refresh_every must be >= 1");
  Require(dense_fill_ratio >= 0.0 && dense_fill_ratio <= 1.0,
          "dense_fill_ratio must lie in [0, 1]");
}

std::vector<ad::Parameter> ModelParams::Trainable(const TrainConfig& cfg) const {
  std::vector<ad::Parameter> out;
  std::set<const ad::Node*> seen;
  for (const auto& w : encoder.weights()) AppendUnique(out, seen, w);
  if (cfg.enable_hsr) {
    for (const auto& w : path_encoder.weights()) AppendUnique(out, seen, w);
    for (const auto& w : attention.w) AppendUnique(out, seen, w);
    for (const auto& b : attention.b) AppendUnique(out, seen, b);
    AppendUnique(out, seen, beta);
  }
  if (cfg.enable_dca) AppendUnique(out, seen, alpha);
  for (const auto& w : decoder.weights()) AppendUnique(out, seen, w);
  return out;
}

std::vector<ad::Parameter> ModelParams::All() const {
  std::vector<ad::Parameter> out;
  std::set<const ad::Node*> seen;
  for (const auto& w : encoder.weights()) AppendUnique(out, seen, w);
  for (const auto& w : path_encoder.weights()) AppendUnique(out, seen, w);
  for (const auto& w : attention.w) AppendUnique(out, seen, w);
  for (const auto& b : attention.b) AppendUnique(out, seen, b);
  AppendUnique(out, seen, alpha);
  AppendUnique(out, seen, beta);
  for (const auto& w : decoder.weights()) AppendUnique(out, seen, w);
  return out;
}

ModelParams BuildModel(Index input_dim, const TrainConfig& cfg) {
  cfg.Validate();
  if (input_dim < 1) throw std::invalid_argument("BuildModel: input_dim must be >= 1");
  ModelParams m;
  m.encoder = GcnStack("encoder", Widths(input_dim, cfg.encoder_hidden, cfg.latent_dim));
  m.independent_paths = cfg.pseudo_siamese;
  m.path_encoder = cfg.pseudo_siamese ? m.encoder.Clone("path_encoder") : m.encoder;
  m.decoder = GcnStack("decoder", Widths(cfg.latent_dim, cfg.decoder_hidden, input_dim));
  m.attention = PathAttention(cfg.h, cfg.latent_dim);
  m.alpha = ad::Parameter("alpha", Matrix::Constant(1, 1, 0.5));
  m.beta = ad::Parameter("beta", Matrix::Constant(1, 1, 0.5));
  return m;
}

void XavierInit(ModelParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto& w : params.encoder.weights()) FillUniform(w.mutable_value(), rng);
  if (params.independent_paths) {
    for (std::size_t l = 0; l < params.encoder.depth(); ++l) {
      params.path_encoder.weights()[l].mutable_value() = params.encoder.weights()[l].value();
    }
  }
  for (auto& w : params.decoder.weights()) FillUniform(w.mutable_value(), rng);
  for (auto& w : params.attention.w) FillUniform(w.mutable_value(), rng);
  for (auto& b : params.attention.b) b.mutable_value().setZero();
  params.alpha.mutable_value().setConstant(0.5);
  params.beta.mutable_value().setConstant(0.5);
}

ad::Tensor Fuse(const ad::Tensor& za, const ad::Tensor& zs, const ad::Tensor& beta) {
  return ad::Mix(za, zs, beta);
}

ad::Tensor AttributeLoss(const ad::Tensor& xhat, const Matrix& xtilde, const NodeMask& observed) {
  return ad::MaskedRowMse(xhat, xtilde, observed);
}

ad::Tensor TotalLoss(const ad::Tensor& la, const ad::Tensor& ls, double lambda) {
  if (!ls.defined()) return ad::Scale(la, lambda);
  return ad::Add(ad::Scale(la, lambda), ls);
}

ModelInputs PrepareInputs(const SparseGraph& graph, const AttributeMatrix& attributes,
                          const TrainConfig& cfg) {
  cfg.Validate();
  if (attributes.n_nodes() != graph.n_nodes()) {
    throw std::invalid_argument("PrepareInputs: attribute rows (" +
                                std::to_string(attributes.n_nodes()) + ") != graph nodes (" +
                                std::to_string(graph.n_nodes()) + ")");
  }
  if (attributes.n_observed() == 0) {
    throw std::invalid_argument("PrepareInputs: no attribute-observed nodes");
  }
  ModelInputs in;
  in.graph = graph;
  in.observed = attributes.observed();
  in.adjacency = NormalizeAdjacency(graph).matrix;
  const std::size_t order = std::max(cfg.enable_hsr ? cfg.h : 1, cfg.enable_dca ? cfg.p : 1);
  in.powers = AdjacencyPowers(NormalizedAdjacency{in.adjacency}, order, cfg.dense_fill_ratio);
  if (cfg.enable_hsr) {
    OrderedAdjacencySet first;
    first.matrices.assign(in.powers.matrices.begin(),
                          in.powers.matrices.begin() + static_cast<std::ptrdiff_t>(cfg.h));
    in.masked = MaskMissingEdges(first, in.observed);
  }
  if (cfg.enable_dca) in.candidates = HopCandidates(in.powers, cfg.p);
  in.x0 = ConstantMatrix::FromSparse(attributes.ZeroFilledSparse());
  in.xtilde = attributes.ZeroFilled();
  if (cfg.enable_hsr) {
    in.edge_weights.emplace(in.observed, cfg.gamma, cfg.exclude_diagonal);
    in.pair_count = in.edge_weights->pair_count();
    if (cfg.pair_samples == 0) {
      in.structure_target = StructureTarget(graph, true);
      in.structure_weights = in.edge_weights->Dense();
    }
  }
  return in;
}

Filters BuildFilters(const Matrix& z, const ModelInputs& inputs, const TrainConfig& cfg) {
  const SimilarityMatrix s = CosineSimilarity(z);
  Filters f{KnnFilter(s, cfg.k), StructureConstrainedFilter(s, inputs.candidates, cfg.k)};
  if (cfg.row_normalize_filters) {
    f.knn = RowNormalized(f.knn);
    f.structural = RowNormalized(f.structural);
  }
  return f;
}

ForwardResult Forward(const ModelParams& params, const ModelInputs& inputs,
                      const TrainConfig& cfg, std::optional<Filters>& filters,
                      std::mt19937_64& rng) {
  ForwardResult r;
  const ad::Tensor projected = ProjectInput(params.encoder, inputs.x0);
  r.z = Propagate(inputs.adjacency, projected, params.encoder);

  if (cfg.enable_dca) {
    if (!filters) filters = BuildFilters(r.z.value(), inputs, cfg);
    r.za = DcaAggregate(r.z, filters->knn, filters->structural, params.alpha);
  } else {
    r.za = r.z;
  }

  if (cfg.enable_hsr) {
    const ad::Tensor path_projected =
        params.independent_paths ? ProjectInput(params.path_encoder, inputs.x0) : projected;
    const std::vector<ad::Tensor> paths =
        PropagatePaths(inputs.masked, path_projected, params.path_encoder);
    r.attention = ComputePathAttention(paths, params.attention);
    r.zs = FusePaths(paths, r.attention);
    if (cfg.pair_samples == 0) {
      r.ahat = DecodeAdjacency(r.zs);
      r.loss_struct = StructureLoss(r.ahat, inputs.structure_target, inputs.structure_weights,
                                    inputs.pair_count);
    } else {
      const auto pairs = SampleStructurePairs(inputs.graph, *inputs.edge_weights,
                                              cfg.pair_samples, true, rng);
      r.loss_struct = SampledStructureLoss(r.zs, pairs);
    }
    r.zf = Fuse(r.za, r.zs, params.beta);
  } else {
    r.zf = r.za;
  }

  r.xhat = Decode(inputs.adjacency, r.zf, params.decoder);
  r.loss_attr = AttributeLoss(r.xhat, inputs.xtilde, inputs.observed);
  r.loss_total = TotalLoss(r.loss_attr, r.loss_struct, cfg.lambda);
  return r;
}

}  // namespace amgae
