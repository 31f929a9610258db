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

#include "amgae/graph.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"

namespace amgae {
namespace {

Matrix Dense(const ConstantMatrix& m) { return m.ToDense(); }

SparseGraph PathGraph(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SparseGraph::FromEdges(n, e);
}

SparseGraph CycleGraph(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return SparseGraph::FromEdges(n, e);
}

SparseGraph RandomGraph(Index n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (coin(rng)) e.emplace_back(i, j);
    }
  }
  return SparseGraph::FromEdges(n, e);
}

TEST(SparseGraphTest, DropsSelfLoopsAndDuplicates) {
  SparseGraph::BuildStats stats;
  const auto g = SparseGraph::FromEdges(3, {{0, 1}, {1, 0}, {1, 1}, {2, 1}, {0, 1}}, &stats);
  EXPECT_EQ(g.n_edges(), 2u);
  EXPECT_EQ(stats.self_loops_dropped, 1u);
  EXPECT_EQ(stats.duplicates_dropped, 2u);
  const Matrix a = g.DenseAdjacency();
  EXPECT_TRUE(a.isApprox(a.transpose()));
  EXPECT_EQ(a(0, 1), 1.0);
  EXPECT_EQ(a(1, 2), 1.0);
  EXPECT_EQ(a(0, 2), 0.0);
  EXPECT_EQ(g.degree(1), 2);
}

TEST(SparseGraphTest, RejectsOutOfRangeIds) {
  EXPECT_THROW(SparseGraph::FromEdges(2, {{0, 2}}), std::invalid_argument);
  EXPECT_THROW(SparseGraph::FromEdges(2, {{-1, 0}}), std::invalid_argument);
}

TEST(AttributeMatrixTest, ZeroFillsMissingRows) {
  Matrix x(3, 2);
  x << 1, 2, 3, 4, 5, 6;
  AttributeMatrix attrs(x, {true, false, true});
  EXPECT_EQ(attrs.n_observed(), 2);
  EXPECT_EQ(attrs.n_missing(), 1);
  const Matrix z = attrs.ZeroFilled();
  EXPECT_EQ(z.row(1).norm(), 0.0);
  EXPECT_EQ(z.row(2), x.row(2));
  EXPECT_TRUE(Matrix(attrs.ZeroFilledSparse()).isApprox(z));
  EXPECT_EQ(attrs.missing_nodes(), std::vector<Index>{1});
  EXPECT_THROW(AttributeMatrix(x, {true}), std::invalid_argument);
}

TEST(NormalizeAdjacencyTest, SingleNodeIsOne) {
  const auto a = Dense(NormalizeAdjacency(SparseGraph::FromEdges(1, {})).matrix);
  ASSERT_EQ(a.rows(), 1);
  EXPECT_DOUBLE_EQ(a(0, 0), 1.0);
}

TEST(NormalizeAdjacencyTest, SingleEdgeIsAllHalves) {
  const auto a = Dense(NormalizeAdjacency(SparseGraph::FromEdges(2, {{0, 1}})).matrix);
  EXPECT_TRUE(a.isApprox(Matrix::Constant(2, 2, 0.5), 1e-15));
}

TEST(NormalizeAdjacencyTest, PathGraphMatchesDenseOracle) {
  const auto g = PathGraph(4);
  const Matrix got = Dense(NormalizeAdjacency(g).matrix);
  const Matrix want = oracle::Normalize(oracle::DenseAdjacency(4, g.edges()));
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NormalizeAdjacencyTest, IsolatedNodeKeepsUnitSelfLoop) {
  const Matrix a = Dense(NormalizeAdjacency(SparseGraph::FromEdges(3, {{0, 1}})).matrix);
  EXPECT_DOUBLE_EQ(a(2, 2), 1.0);
  EXPECT_EQ(a.row(2).sum(), 1.0);
}

TEST(NormalizeAdjacencyTest, SymmetricNonNegativeOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = RandomGraph(12, 0.3, seed);
    const Matrix a = Dense(NormalizeAdjacency(g).matrix);
    EXPECT_EQ(a, a.transpose()) << "seed " << seed;
    EXPECT_GE(a.minCoeff(), 0.0);
    EXPECT_LE(a.maxCoeff(), 1.0);
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index j = 0; j < a.cols(); ++j) {
        if (i != j && a(i, j) != 0.0) EXPECT_EQ(g.DenseAdjacency()(i, j), 1.0);
      }
    }
  }
}

TEST(AdjacencyPowersTest, SingleOrder) {
  const auto a1 = NormalizeAdjacency(PathGraph(3));
  const auto set = AdjacencyPowers(a1, 1);
  ASSERT_EQ(set.order(), 1u);
  EXPECT_EQ(Dense(set.power(1)), Dense(a1.matrix));
}

TEST(AdjacencyPowersTest, IdentityIsFixedPoint) {
  const auto set = AdjacencyPowers(NormalizedAdjacency{ConstantMatrix::Identity(4)}, 3);
  ASSERT_EQ(set.order(), 3u);
  for (std::size_t h = 1; h <= 3; ++h) EXPECT_EQ(Dense(set.power(h)), Matrix::Identity(4, 4));
}

TEST(AdjacencyPowersTest, MatchesDenseProducts) {
  const auto g = RandomGraph(8, 0.3, 7);
  const auto a1 = NormalizeAdjacency(g);
  const auto want = oracle::Powers(Dense(a1.matrix), 4);
  for (double fill : {0.0, 0.25, 1.1}) {
    const auto set = AdjacencyPowers(a1, 4, fill);
    for (std::size_t h = 1; h <= 4; ++h) {
      EXPECT_LT((Dense(set.power(h)) - want[h - 1]).cwiseAbs().maxCoeff(), 1e-12)
          << "h=" << h << " fill=" << fill;
    }
  }
}

TEST(AdjacencyPowersTest, DenseFallbackAboveFillRatio) {
  const auto a1 = NormalizeAdjacency(PathGraph(4));
  EXPECT_TRUE(AdjacencyPowers(a1, 3, 0.0).power(3).is_dense());
  EXPECT_FALSE(AdjacencyPowers(a1, 3, 1.1).power(3).is_dense());
}

TEST(AdjacencyPowersTest, RejectsZeroOrder) {
  EXPECT_THROW(AdjacencyPowers(NormalizeAdjacency(PathGraph(3)), 0), std::invalid_argument);
}

TEST(AdjacencyPowersTest, PowersStaySymmetricInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto set = AdjacencyPowers(NormalizeAdjacency(RandomGraph(10, 0.4, seed)), 3);
    for (const auto& m : set.matrices) {
      const Matrix d = Dense(m);
      EXPECT_LT((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_GE(d.minCoeff(), 0.0);
      EXPECT_LE(d.maxCoeff(), 1.0 + 1e-12);
    }
  }
}

TEST(MaskMissingEdgesTest, AllObservedLeavesMatricesAlone) {
  const auto set = AdjacencyPowers(NormalizeAdjacency(CycleGraph(4)), 2);
  const auto masked = MaskMissingEdges(set, NodeMask(4, true));
  EXPECT_TRUE(masked.mask_pairs.empty());
  for (std::size_t h = 1; h <= 2; ++h) EXPECT_EQ(Dense(masked.power(h)), Dense(set.power(h)));
}

TEST(MaskMissingEdgesTest, AllMissingKeepsOnlyDiagonal) {
  const auto set = AdjacencyPowers(NormalizeAdjacency(CycleGraph(4)), 3);
  const auto masked = MaskMissingEdges(set, NodeMask(4, false));
  for (std::size_t h = 1; h <= 3; ++h) {
    const Matrix want = Matrix(Dense(set.power(h)).diagonal().asDiagonal());
    EXPECT_EQ(Dense(masked.power(h)), want);
  }
}

TEST(MaskMissingEdgesTest, CycleMatchesPerEntryRule) {
  const auto set = AdjacencyPowers(NormalizeAdjacency(CycleGraph(4)), 3);
  const NodeMask observed = {false, false, true, true};
  const auto masked = MaskMissingEdges(set, observed);
  for (std::size_t h = 1; h <= 3; ++h) {
    const Matrix got = Dense(masked.power(h));
    EXPECT_EQ(got, oracle::Mask(Dense(set.power(h)), observed));
    EXPECT_EQ(got(0, 1), 0.0);
    EXPECT_EQ(got(1, 0), 0.0);
  }
  EXPECT_EQ(masked.mask_pairs, (std::vector<Edge>{{0, 1}, {1, 0}}));
}

TEST(MaskMissingEdgesTest, IdempotentAndOnlyTouchesMaskPairs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = RandomGraph(9, 0.4, seed);
    const auto set = AdjacencyPowers(NormalizeAdjacency(g), 3, 0.25);
    std::mt19937_64 rng(seed);
    NodeMask observed(9);
    for (std::size_t i = 0; i < 9; ++i) observed[i] = (rng() % 2) == 0;
    const auto once = MaskMissingEdges(set, observed);
    OrderedAdjacencySet again_in{once.matrices};
    const auto twice = MaskMissingEdges(again_in, observed);
    std::set<Edge> pairs(once.mask_pairs.begin(), once.mask_pairs.end());
    for (std::size_t h = 1; h <= 3; ++h) {
      const Matrix a = Dense(set.power(h));
      const Matrix m = Dense(once.power(h));
      EXPECT_EQ(Dense(twice.power(h)), m);
      for (Index i = 0; i < 9; ++i) {
        for (Index j = 0; j < 9; ++j) {
          if (!pairs.count({i, j})) EXPECT_EQ(m(i, j), a(i, j));
          if (i != j && !observed[i] && !observed[j]) EXPECT_EQ(m(i, j), 0.0);
        }
      }
    }
  }
}

}  // namespace
}  // namespace amgae
