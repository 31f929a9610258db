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

#include "amgae/synthetic.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>
#include <stdexcept>

namespace amgae {

DatasetBundle MakePlantedPartition(const SyntheticSpec& spec) {
  if (spec.nodes < 2 || spec.blocks < 1 || spec.dims < spec.blocks) {
    throw std::invalid_argument("MakePlantedPartition: need nodes >= 2 and dims >= blocks >= 1");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto block = [&spec](Index i) { return static_cast<int>(i % spec.blocks); };
  const auto dim_block = [&spec](Index j) {
    return static_cast<int>(std::min<Index>(j * spec.blocks / spec.dims, spec.blocks - 1));
  };
  // Rank of each dimension inside its block and the block widths.
  std::vector<Index> rank(static_cast<std::size_t>(spec.dims));
  std::vector<Index> width(static_cast<std::size_t>(spec.blocks), 0);
  for (Index j = 0; j < spec.dims; ++j) {
    rank[static_cast<std::size_t>(j)] = width[static_cast<std::size_t>(dim_block(j))]++;
  }

  std::vector<Edge> edges;
  for (Index i = 0; i < spec.nodes; ++i) {
    for (Index j = i + 1; j < spec.nodes; ++j) {
      if (u(rng) < (block(i) == block(j) ? spec.p_in : spec.p_out)) edges.emplace_back(i, j);
    }
  }

  DatasetBundle b;
  b.name = "synthetic";
  b.graph = SparseGraph::FromEdges(spec.nodes, edges);
  b.x = Matrix::Zero(spec.nodes, spec.dims);
  b.n_classes = spec.blocks;
  for (Index i = 0; i < spec.nodes; ++i) {
    b.labels.push_back(block(i));
    bool any = false;
    for (Index j = 0; j < spec.dims; ++j) {
      const auto blk = static_cast<std::size_t>(dim_block(j));
      const double p =
          dim_block(j) == block(i)
              ? spec.attr_in * std::exp(-spec.attr_decay *
                                        static_cast<double>(rank[static_cast<std::size_t>(j)]) /
                                        static_cast<double>(width[blk]))
              : spec.attr_noise;
      if (u(rng) < p) {
        b.x(i, j) = 1.0;
        any = true;
      }
    }
    if (!any) {
      // Fall back to the first dimension of the node's own block.
      for (Index j = 0; j < spec.dims; ++j) {
        if (dim_block(j) == block(i)) {
          b.x(i, j) = 1.0;
          break;
        }
      }
    }
  }
  return b;
}

}  // namespace amgae
