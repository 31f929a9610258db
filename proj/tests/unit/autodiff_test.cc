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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "amgae/autodiff/ops.h"
#include "amgae/autodiff/tensor.h"
#include "gradcheck.h"

namespace amgae::ad {
namespace {

using testing::GradCheck;

constexpr double kTol = 1e-4;

Matrix Random(Index r, Index c, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) = u(rng);
  }
  return m;
}

// Entries bounded away from zero so ReLU never sits on its kink.
Matrix AwayFromZero(Index r, Index c, std::uint64_t seed) {
  Matrix m = Random(r, c, seed);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < c; ++j) m(i, j) += m(i, j) >= 0 ? 0.1 : -0.1;
  }
  return m;
}

// A fixed random projection turns any matrix into a scalar with a
// non-trivial gradient everywhere.
Tensor Project(const Tensor& x, std::uint64_t seed = 99) {
  const Tensor w(Random(x.rows(), x.cols(), seed));
  return Sum(Tensor::FromOp(
      x.value().cwiseProduct(w.value()), {x},
      [xn = x.node(), wv = w.value()](const Matrix& g) { xn->Accumulate(g(0, 0) * wv); }));
}

TEST(MatMulTest, Values) {
  const Tensor m(Random(3, 3, 1));
  EXPECT_EQ(MatMul(Tensor(Matrix::Identity(3, 3)), m).value(), m.value());
  EXPECT_EQ(MatMul(Tensor::Scalar(2), Tensor::Scalar(3)).item(), 6.0);
  EXPECT_THROW(MatMul(Tensor(Matrix::Zero(2, 3)), Tensor(Matrix::Zero(2, 3))),
               std::invalid_argument);
}

TEST(MatMulTest, Gradient) {
  const auto r = GradCheck([](const auto& in) { return Project(MatMul(in[0], in[1])); },
                           {Random(3, 4, 2), Random(4, 2, 3)});
  EXPECT_LT(r.max_rel_error, kTol) << r.worst;
}

TEST(GramTest, MatchesLoopProductAndIsSymmetric) {
  const Matrix z = Random(5, 3, 4);
  const Matrix g = Gram(Tensor(z)).value();
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      double dot = 0.0;
      for (Index c = 0; c < 3; ++c) dot += z(i, c) * z(j, c);
      EXPECT_NEAR(g(i, j), dot, 1e-12);
      EXPECT_EQ(g(i, j), g(j, i));
    }
  }
}

// The projection weights are not symmetric, so this also exercises the
// (g + g^T) part of the backward rule.
TEST(GramTest, Gradient) {
  const auto r = GradCheck([](const auto& in) { return Project(Gram(in[0])); },
                           {Random(5, 3, 5)});
  EXPECT_LT(r.max_rel_error, kTol) << r.worst;
}

TEST(SparseMatMulTest, MatchesDenseProduct) {
  Matrix d = Random(5, 5, 4);
  d = d.unaryExpr([](double v) { return std::abs(v) < 0.5 ? 0.0 : v; });
  const ConstantMatrix s = ConstantMatrix::FromSparse(d.sparseView());
  const Tensor t(Random(5, 3, 5));
  const Matrix got = SparseMatMul(s, t).value();
  Matrix want = Matrix::Zero(5, 3);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 3; ++j) {
      for (Index k = 0; k < 5; ++k) want(i, j) += d(i, k) * t.value()(k, j);
    }
  }
  EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(SparseMatMul(ConstantMatrix::Identity(5), t).value(), t.value());
  EXPECT_EQ(SparseMatMul(ConstantMatrix::FromSparse(SparseMatrix(5, 5)), t).value().norm(), 0.0);
  EXPECT_THROW(SparseMatMul(s, Tensor(Matrix::Zero(4, 3))), std::invalid_argument);
}

TEST(SparseMatMulTest, Gradient) {
  Matrix d = Random(5, 5, 6);
  d = d.unaryExpr([](double v) { return std::abs(v) < 0.4 ? 0.0 : v; });
  for (const ConstantMatrix& s : {ConstantMatrix::FromSparse(d.sparseView()),
                                  ConstantMatrix::FromDense(d)}) {
    const auto r = GradCheck([&s](const auto& in) { return Project(SparseMatMul(s, in[0])); },
                             {Random(5, 3, 7)});
    EXPECT_LT(r.max_rel_error, kTol);
  }
}

TEST(ElementwiseTest, Values) {
  Matrix m(1, 2);
  m << -1, 2;
  EXPECT_EQ(Relu(Tensor(m)).value()(0, 0), 0.0);
  EXPECT_EQ(Relu(Tensor(m)).value()(0, 1), 2.0);
  EXPECT_EQ(Sigmoid(Tensor::Scalar(0)).item(), 0.5);
  EXPECT_EQ(Scale(Tensor(m), 3).value()(0, 1), 6.0);
  EXPECT_EQ(Transpose(Tensor(m)).value().rows(), 2);
  EXPECT_EQ(Sum(Tensor(m)).item(), 1.0);
  EXPECT_EQ(Sub(Tensor(m), Tensor(m)).value().norm(), 0.0);
}

struct UnaryCase {
  const char* name;
  std::function<Tensor(const Tensor&)> op;
};

TEST(ElementwiseTest, Gradients) {
  std::mt19937_64 rng(3);
  const std::vector<UnaryCase> cases = {
      {"relu", [](const Tensor& x) { return Relu(x); }},
      {"sigmoid", [](const Tensor& x) { return Sigmoid(x); }},
      {"scale", [](const Tensor& x) { return Scale(x, -2.5); }},
      {"transpose", [](const Tensor& x) { return Transpose(x); }},
      {"row_softmax", [](const Tensor& x) { return RowSoftmax(x); }},
      {"column", [](const Tensor& x) { return Column(x, 2); }},
      {"concat", [](const Tensor& x) {
         const std::vector<Tensor> parts = {x, Scale(x, 2.0), Column(x, 1)};
         return ConcatCols(parts);
       }},
  };
  for (const auto& c : cases) {
    const auto r = GradCheck([&c](const auto& in) { return Project(c.op(in[0])); },
                             {AwayFromZero(4, 4, 11)});
    EXPECT_LT(r.max_rel_error, kTol) << c.name;
  }
}

TEST(ElementwiseTest, BinaryGradients) {
  const auto add = GradCheck([](const auto& in) { return Project(Add(in[0], in[1])); },
                             {Random(4, 4, 1), Random(4, 4, 2)});
  EXPECT_LT(add.max_rel_error, kTol);
  const auto sub = GradCheck([](const auto& in) { return Project(Sub(in[0], in[1])); },
                             {Random(4, 4, 3), Random(4, 4, 4)});
  EXPECT_LT(sub.max_rel_error, kTol);
  const auto smul = GradCheck([](const auto& in) { return Project(ScalarMul(in[0], in[1])); },
                              {Random(1, 1, 5), Random(4, 4, 6)});
  EXPECT_LT(smul.max_rel_error, kTol);
  const auto adds = GradCheck([](const auto& in) { return Project(AddScalar(in[0], in[1])); },
                              {Random(4, 4, 7), Random(1, 1, 8)});
  EXPECT_LT(adds.max_rel_error, kTol);
  const auto mix = GradCheck([](const auto& in) { return Project(Mix(in[0], in[1], in[2])); },
                             {Random(4, 4, 9), Random(4, 4, 10), Random(1, 1, 11)});
  EXPECT_LT(mix.max_rel_error, kTol);
  const auto rs = GradCheck([](const auto& in) { return Project(RowScale(in[0], in[1])); },
                            {Random(4, 4, 12), Random(4, 1, 13)});
  EXPECT_LT(rs.max_rel_error, kTol);
}

TEST(RowSoftmaxTest, RowsSumToOne) {
  const Matrix s = RowSoftmax(Tensor(Random(6, 5, 3, -30, 30))).value();
  for (Index i = 0; i < s.rows(); ++i) EXPECT_NEAR(s.row(i).sum(), 1.0, 1e-9);
  EXPECT_GT(s.minCoeff(), 0.0);
}

TEST(LossTest, MaskedRowMseValuesAndGradient) {
  const Matrix target = Random(4, 3, 1);
  Matrix pred = target;
  pred.row(1).setConstant(100.0);  // missing row: ignored
  const NodeMask rows = {true, false, true, true};
  EXPECT_EQ(MaskedRowMse(Tensor(pred), target, rows).item(), 0.0);
  Matrix shifted = target.array() + 0.3;
  EXPECT_NEAR(MaskedRowMse(Tensor(shifted), target, rows).item(), 0.09, 1e-15);
  const auto r = GradCheck([&](const auto& in) { return MaskedRowMse(in[0], target, rows); },
                           {Random(4, 3, 2)});
  EXPECT_LT(r.max_rel_error, kTol);
  EXPECT_THROW(MaskedRowMse(Tensor(pred), target, NodeMask(4, false)), std::invalid_argument);
  pred(0, 0) = std::nan("");
  EXPECT_THROW(MaskedRowMse(Tensor(pred), target, rows), std::domain_error);
}

TEST(LossTest, WeightedBceValuesAndGradient) {
  const Matrix half = Matrix::Constant(3, 3, 0.5);
  Matrix target = Matrix::Zero(3, 3);
  target(0, 1) = 1;
  EXPECT_NEAR(WeightedBce(Tensor(half), target, Matrix::Ones(3, 3)).item(), std::log(2.0),
              1e-15);
  // Confident correct predictions sit at the clamp.
  EXPECT_NEAR(WeightedBce(Tensor(target), target, Matrix::Ones(3, 3)).item(),
              -std::log(1.0 - kProbClamp), 1e-12);
  const Matrix w = Random(4, 4, 3, 0.5, 5.0);
  Matrix t = Random(4, 4, 4, 0, 1).unaryExpr([](double v) { return v > 0.5 ? 1.0 : 0.0; });
  const auto r = GradCheck(
      [&](const auto& in) { return WeightedBce(Sigmoid(in[0]), t, w, 7.0); }, {Random(4, 4, 5)});
  EXPECT_LT(r.max_rel_error, kTol);
  Matrix bad = half;
  bad(1, 1) = INFINITY;
  EXPECT_THROW(WeightedBce(Tensor(bad), target, Matrix::Ones(3, 3)), std::domain_error);
  EXPECT_THROW(WeightedBce(Tensor(half), Matrix::Zero(2, 2), Matrix::Ones(3, 3)),
               std::invalid_argument);
}

TEST(LossTest, PairBceMatchesDenseLossOnAllPairs) {
  const Matrix z = Random(4, 2, 6);
  std::vector<PairSample> pairs;
  Matrix t = Matrix::Zero(4, 4);
  Matrix w = Matrix::Ones(4, 4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) {
      t(i, j) = (i + j) % 3 == 0 ? 1.0 : 0.0;
      w(i, j) = 1.0 + static_cast<double>(i * j % 2);
      pairs.push_back({i, j, t(i, j), w(i, j)});
    }
  }
  const Tensor zt(z);
  const double dense = WeightedBce(Sigmoid(MatMul(zt, Transpose(zt))), t, w).item();
  EXPECT_NEAR(PairBceFromEmbeddings(zt, pairs).item(), dense, 1e-12);
  const auto r = GradCheck([&](const auto& in) { return PairBceFromEmbeddings(in[0], pairs); },
                           {z});
  EXPECT_LT(r.max_rel_error, kTol);
}

TEST(LossTest, SoftmaxCrossEntropyGradient) {
  const std::vector<int> labels = {0, 2, 1, 2};
  const std::vector<Index> rows = {0, 1, 3};
  const auto r = GradCheck(
      [&](const auto& in) { return SoftmaxCrossEntropy(in[0], labels, rows); },
      {Random(4, 3, 8)});
  EXPECT_LT(r.max_rel_error, kTol);
  Matrix uniform = Matrix::Zero(4, 3);
  EXPECT_NEAR(SoftmaxCrossEntropy(Tensor(uniform), labels, rows).item(), std::log(3.0), 1e-15);
}

TEST(DropoutTest, IdentityAtZeroAndUnbiased) {
  std::mt19937_64 rng(1);
  const Tensor x(Matrix::Ones(200, 200));
  EXPECT_EQ(Dropout(x, 0.0, rng).value(), x.value());
  const Matrix d = Dropout(x, 0.5, rng).value();
  EXPECT_NEAR(d.mean(), 1.0, 0.02);
  EXPECT_THROW(Dropout(x, 1.0, rng), std::invalid_argument);
}

TEST(BackwardTest, SumGivesOnes) {
  Parameter w("w", Random(2, 2, 1));
  Backward(Sum(w));
  EXPECT_EQ(w.grad(), Matrix::Ones(2, 2));
}

TEST(BackwardTest, ZeroTimesParameterGivesZeros) {
  Parameter w("w", Random(2, 2, 1));
  Backward(Sum(Scale(w, 0.0)));
  EXPECT_EQ(w.grad(), Matrix::Zero(2, 2));
}

TEST(BackwardTest, UnreachableParameterHoldsZero) {
  Parameter used("a", Random(2, 2, 1));
  Parameter unused("b", Random(2, 2, 2));
  Backward(Sum(used));
  EXPECT_FALSE(unused.tensor().has_grad());
  EXPECT_EQ(unused.grad(), Matrix::Zero(2, 2));
}

TEST(BackwardTest, RejectsNonScalarLoss) {
  Parameter w("w", Random(2, 2, 1));
  EXPECT_THROW(Backward(w), std::invalid_argument);
}

TEST(BackwardTest, TwoLayerNetworkGradient) {
  const Matrix x = Random(5, 3, 1);
  const auto r = GradCheck(
      [&x](const auto& in) {
        const Tensor h = Relu(MatMul(Tensor(x), in[0]));
        return Sum(Sigmoid(MatMul(h, in[1])));
      },
      {AwayFromZero(3, 4, 2), Random(4, 2, 3)});
  EXPECT_LT(r.max_rel_error, kTol);
}

TEST(BackwardTest, SharedParameterAccumulates) {
  Parameter w("w", Random(3, 3, 1));
  const Tensor x(Random(2, 3, 2));
  Backward(Add(Sum(MatMul(x, w)), Sum(MatMul(x, w))));
  const Matrix twice = w.grad();
  w.ZeroGrad();
  Backward(Sum(MatMul(x, w)));
  EXPECT_LT((twice - 2.0 * w.grad()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BackwardTest, RepeatedPassesAreIdentical) {
  Parameter w("w", Random(3, 3, 1));
  const Tensor x(Random(4, 3, 2));
  const auto loss = [&] { return Sum(Sigmoid(MatMul(x, w))); };
  Backward(loss());
  const Matrix first = w.grad();
  w.ZeroGrad();
  Backward(loss());
  EXPECT_EQ(first, w.grad());
}

TEST(TensorTest, DetachCutsGradient) {
  Parameter w("w", Random(2, 2, 1));
  Backward(Sum(Add(Tensor(w).Detach(), Scale(w, 2.0))));
  EXPECT_EQ(w.grad(), Matrix::Constant(2, 2, 2.0));
}

}  // namespace
}  // namespace amgae::ad
