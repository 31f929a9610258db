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

#include <Eigen/Core>

#include "amgae/graph.h"

namespace amgae {

// Per evaluated node: attribute dimensions ordered by predicted score, and the
// dimensions that are truly present.
struct RankingResult {
  Index n_dims = 0;
  std::vector<Index> nodes;
  std::vector<std::vector<Index>> ranking;  // each a permutation of [0, n_dims)
  std::vector<std::vector<Index>> truth;    // ascending
};

// Dimensions by descending score; equal scores keep ascending index order.
std::vector<Index> RankDimensions(const Eigen::Ref<const Eigen::RowVectorXd>& scores);

// Rankings of `scores` rows and truth sets of nonzero `truth` entries for
// `nodes`.
RankingResult BuildRanking(const Matrix& scores, const Matrix& truth,
                           const std::vector<Index>& nodes);

// Both metrics average over nodes with a non-empty truth set (macro average);
// nodes with an empty truth set are skipped. Throw std::invalid_argument when
// k is 0 or exceeds n_dims, or when no node can be scored.
double RecallAtK(const RankingResult& r, std::size_t k);
// Binary-relevance DCG@k / IDCG@k with 1 / log2(position + 1) discounts.
double NdcgAtK(const RankingResult& r, std::size_t k);

// True when every entry is 0 or 1.
bool IsCategorical(const Matrix& x);

struct ProfileRow {
  std::size_t k = 0;
  double recall = 0.0;
  double ndcg = 0.0;
};

struct ProfileReport {
  std::vector<ProfileRow> rows;
  std::size_t evaluated_nodes = 0;  // missing nodes with a non-empty truth set
};

// Scores the reconstructed rows of the attribute-missing nodes of `truth`
// against their held-out values. Throws std::invalid_argument when there is no
// missing node or the shapes disagree.
ProfileReport ProfileEval(const Matrix& xhat, const AttributeMatrix& truth,
                          const std::vector<std::size_t>& ks = {10, 20, 50});

}  // namespace amgae
