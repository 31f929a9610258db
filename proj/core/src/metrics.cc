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

#include "amgae/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace amgae {
namespace {

void CheckK(const RankingResult& r, std::size_t k) {
  if (k == 0 || static_cast<Index>(k) > r.n_dims) {
    throw std::invalid_argument("ranking metric: k=" + std::to_string(k) +
                                " outside [1, " + std::to_string(r.n_dims) + "]");
  }
  if (r.ranking.size() != r.truth.size()) {
    throw std::invalid_argument("ranking metric: ranking and truth lengths differ");
  }
}

bool Contains(const std::vector<Index>& sorted, Index v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

template <typename PerNode>
double MacroAverage(const RankingResult& r, std::size_t k, PerNode per_node) {
  CheckK(r, k);
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t n = 0; n < r.ranking.size(); ++n) {
    if (r.truth[n].empty()) continue;
    total += per_node(r.ranking[n], r.truth[n]);
    ++counted;
  }
  if (counted == 0) throw std::invalid_argument("ranking metric: no node with a non-empty truth set");
  return total / static_cast<double>(counted);
}

}  // namespace

std::vector<Index> RankDimensions(const Eigen::Ref<const Eigen::RowVectorXd>& scores) {
  std::vector<Index> order(static_cast<std::size_t>(scores.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&scores](Index a, Index b) { return scores(a) > scores(b); });
  return order;
}

RankingResult BuildRanking(const Matrix& scores, const Matrix& truth,
                           const std::vector<Index>& nodes) {
  if (scores.rows() != truth.rows() || scores.cols() != truth.cols()) {
    throw std::invalid_argument("BuildRanking: score and truth shapes differ");
  }
  RankingResult r;
  r.n_dims = scores.cols();
  r.nodes = nodes;
  for (Index n : nodes) {
    if (n < 0 || n >= scores.rows()) throw std::invalid_argument("BuildRanking: node out of range");
    r.ranking.push_back(RankDimensions(scores.row(n)));
    std::vector<Index> t;
    for (Index j = 0; j < truth.cols(); ++j) {
      if (truth(n, j) != 0.0) t.push_back(j);
    }
    r.truth.push_back(std::move(t));
  }
  return r;
}

double RecallAtK(const RankingResult& r, std::size_t k) {
  return MacroAverage(r, k, [k](const std::vector<Index>& rank, const std::vector<Index>& truth) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < k; ++i) hits += Contains(truth, rank[i]) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(truth.size());
  });
}

double NdcgAtK(const RankingResult& r, std::size_t k) {
  return MacroAverage(r, k, [k](const std::vector<Index>& rank, const std::vector<Index>& truth) {
    double dcg = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (Contains(truth, rank[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
    double idcg = 0.0;
    const std::size_t ideal = std::min(k, truth.size());
    for (std::size_t i = 0; i < ideal; ++i) idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    return dcg / idcg;
  });
}

bool IsCategorical(const Matrix& x) {
  return ((x.array() == 0.0) || (x.array() == 1.0)).all();
}

ProfileReport ProfileEval(const Matrix& xhat, const AttributeMatrix& truth,
                          const std::vector<std::size_t>& ks) {
  if (xhat.rows() != truth.n_nodes() || xhat.cols() != truth.n_dims()) {
    throw std::invalid_argument("ProfileEval: reconstruction is " + std::to_string(xhat.rows()) +
                                "x" + std::to_string(xhat.cols()) + ", truth is " +
                                std::to_string(truth.n_nodes()) + "x" +
                                std::to_string(truth.n_dims()));
  }
  const std::vector<Index> missing = truth.missing_nodes();
  if (missing.empty()) throw std::invalid_argument("ProfileEval: no attribute-missing nodes");
  const RankingResult r = BuildRanking(xhat, truth.x(), missing);
  ProfileReport report;
  for (const auto& t : r.truth) report.evaluated_nodes += t.empty() ? 0 : 1;
  for (std::size_t k : ks) report.rows.push_back({k, RecallAtK(r, k), NdcgAtK(r, k)});
  return report;
}

}  // namespace amgae
