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

#include "amgae/classify.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "amgae/adam.h"
#include "amgae/autodiff/ops.h"

namespace amgae {
namespace {

int ClassCount(std::span<const int> labels) {
  int c = 0;
  for (int l : labels) {
    if (l < 0) throw std::invalid_argument("classifier: negative label");
    c = std::max(c, l + 1);
  }
  return c;
}

Matrix Uniform(Index rows, Index cols, std::mt19937_64& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  }
  return m;
}

Index ArgMax(const Matrix& m, Index row) {
  Index best = 0;
  for (Index j = 1; j < m.cols(); ++j) {
    if (m(row, j) > m(row, best)) best = j;
  }
  return best;
}

}  // namespace

void ClassifierConfig::Validate() const {
  if (hidden < 1) throw std::invalid_argument("ClassifierConfig: hidden must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("ClassifierConfig: lr must be > 0");
  if (epochs < 1) throw std::invalid_argument("ClassifierConfig: epochs must be >= 1");
  if (weight_decay < 0.0) throw std::invalid_argument("ClassifierConfig: weight_decay < 0");
  if (dropout < 0.0 || dropout >= 1.0) {
    throw std::invalid_argument("ClassifierConfig: dropout must lie in [0, 1)");
  }
  if (folds < 2) throw std::invalid_argument("ClassifierConfig: folds must be >= 2");
  if (repeats < 1) throw std::invalid_argument("ClassifierConfig: repeats must be >= 1");
}

double ClassificationReport::mean() const {
  if (accuracy.empty()) return 0.0;
  return std::accumulate(accuracy.begin(), accuracy.end(), 0.0) /
         static_cast<double>(accuracy.size());
}

double ClassificationReport::stddev() const {
  if (accuracy.size() < 2) return 0.0;
  const double mu = mean();
  double ss = 0.0;
  for (double a : accuracy) ss += (a - mu) * (a - mu);
  return std::sqrt(ss / static_cast<double>(accuracy.size() - 1));
}

std::vector<int> StratifiedFolds(std::span<const int> labels, std::size_t folds,
                                 std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("StratifiedFolds: folds must be >= 2");
  const int classes = ClassCount(labels);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(classes));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(static_cast<Index>(i));
  }
  for (int c = 0; c < classes; ++c) {
    const std::size_t size = members[static_cast<std::size_t>(c)].size();
    if (size > 0 && size < folds) {
      throw std::invalid_argument("StratifiedFolds: class " + std::to_string(c) + " has " +
                                  std::to_string(size) + " members, fewer than " +
                                  std::to_string(folds) + " folds");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<int> fold(labels.size(), -1);
  std::size_t deal = 0;
  for (auto& m : members) {
    std::shuffle(m.begin(), m.end(), rng);
    for (Index node : m) fold[static_cast<std::size_t>(node)] = static_cast<int>(deal++ % folds);
  }
  return fold;
}

std::vector<std::vector<int>> RepeatedStratifiedFolds(std::span<const int> labels,
                                                      std::size_t folds, std::size_t repeats,
                                                      std::uint64_t seed) {
  std::vector<std::vector<int>> out;
  std::vector<std::uint64_t> seeds(repeats);
  std::mt19937_64 master(seed);
  for (auto& s : seeds) s = master();
  for (std::size_t r = 0; r < repeats; ++r) out.push_back(StratifiedFolds(labels, folds, seeds[r]));
  return out;
}

double TrainAndScore(const ConstantMatrix& adjacency, const Matrix& features,
                     std::span<const int> labels, std::span<const Index> train,
                     std::span<const Index> test, const ClassifierConfig& cfg,
                     std::uint64_t run_seed) {
  cfg.Validate();
  if (train.empty() || test.empty()) throw std::invalid_argument("TrainAndScore: empty split");
  const int classes = std::max(ClassCount(labels), 1);
  std::mt19937_64 rng(run_seed);

  // The first layer's propagation does not depend on the weights.
  const ad::Tensor ax(adjacency.Multiply(features));
  ad::Parameter w1("classifier.0", Uniform(features.cols(), cfg.hidden, rng));
  ad::Parameter w2("classifier.1", Uniform(cfg.hidden, classes, rng));
  Adam::Options opt;
  opt.lr = cfg.lr;
  opt.weight_decay = cfg.weight_decay;
  Adam adam({w1, w2}, opt);

  const auto logits = [&](bool training) {
    ad::Tensor h = ad::Relu(ad::MatMul(ax, w1));
    if (training) h = ad::Dropout(h, cfg.dropout, rng);
    return ad::SparseMatMul(adjacency, ad::MatMul(h, w2));
  };

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    adam.ZeroGrad();
    ad::Backward(ad::SoftmaxCrossEntropy(logits(true), labels, train));
    adam.Step();
  }

  const Matrix out = logits(false).value();
  std::size_t correct = 0;
  for (Index n : test) {
    correct += ArgMax(out, n) == labels[static_cast<std::size_t>(n)] ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

ClassificationReport ClassifyNodes(const SparseGraph& graph, const Matrix& features,
                                   std::span<const int> labels, const ClassifierConfig& cfg) {
  cfg.Validate();
  return ClassifyNodes(graph, features, labels,
                       RepeatedStratifiedFolds(labels, cfg.folds, cfg.repeats, cfg.seed), cfg);
}

ClassificationReport ClassifyNodes(const SparseGraph& graph, const Matrix& features,
                                   std::span<const int> labels,
                                   const std::vector<std::vector<int>>& folds,
                                   const ClassifierConfig& cfg) {
  cfg.Validate();
  const auto n = static_cast<std::size_t>(graph.n_nodes());
  if (features.rows() != graph.n_nodes() || labels.size() != n) {
    throw std::invalid_argument("ClassifyNodes: features, labels and graph sizes differ");
  }
  const ConstantMatrix adj = NormalizeAdjacency(graph).matrix;

  struct Run {
    std::vector<Index> train;
    std::vector<Index> test;
    std::uint64_t seed;
  };
  std::vector<Run> runs;
  std::mt19937_64 master(cfg.seed + 1);
  for (const auto& assignment : folds) {
    if (assignment.size() != n) throw std::invalid_argument("ClassifyNodes: fold vector size");
    for (std::size_t f = 0; f < cfg.folds; ++f) {
      Run run;
      for (std::size_t i = 0; i < n; ++i) {
        if (assignment[i] < 0 || static_cast<std::size_t>(assignment[i]) >= cfg.folds) {
          throw std::invalid_argument("ClassifyNodes: fold id out of range");
        }
        (static_cast<std::size_t>(assignment[i]) == f ? run.test : run.train)
            .push_back(static_cast<Index>(i));
      }
      run.seed = master();
      runs.push_back(std::move(run));
    }
  }

  ClassificationReport report;
  report.folds = cfg.folds;
  report.repeats = folds.size();
  report.accuracy.assign(runs.size(), 0.0);
  const auto score = [&](std::size_t r) {
    return TrainAndScore(adj, features, labels, runs[r].train, runs[r].test, cfg, runs[r].seed);
  };
  if (cfg.parallel) {
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < runs.size(); start += width) {
      std::vector<std::future<double>> batch;
      for (std::size_t r = start; r < std::min(runs.size(), start + width); ++r) {
        batch.push_back(std::async(std::launch::async, score, r));
      }
      for (std::size_t b = 0; b < batch.size(); ++b) report.accuracy[start + b] = batch[b].get();
    }
  } else {
    for (std::size_t r = 0; r < runs.size(); ++r) report.accuracy[r] = score(r);
  }
  return report;
}

}  // namespace amgae
