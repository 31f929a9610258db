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

#include "amgae/autodiff/ops.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace amgae::ad {
namespace {

void RequireSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

void RequireScalar(const Tensor& s, const char* op) {
  if (!s.is_scalar()) throw std::invalid_argument(std::string(op) + ": expected a 1x1 tensor");
}

void RequireFinite(const Matrix& m, const char* op) {
  if (!m.allFinite()) throw std::domain_error(std::string(op) + ": non-finite input");
}

// Creates the output node, then installs a backward rule that may refer to
// the output node itself (e.g. sigmoid reuses its output value).
template <typename MakeBackward>
Tensor MakeOp(Matrix value, std::vector<Tensor> inputs, MakeBackward&& make_backward) {
  Tensor out = Tensor::FromOp(std::move(value), std::move(inputs), nullptr);
  if (out.requires_grad()) out.node()->backward = make_backward(out.node());
  return out;
}

double Clamp(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

bool Clamped(double p) { return p < kProbClamp || p > 1.0 - kProbClamp; }

double Logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("MatMul: inner dimensions differ (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
  }
  Node* pa = a.node();
  Node* pb = b.node();
  return MakeOp(a.value() * b.value(), {a, b}, [pa, pb](Node*) {
    return [pa, pb](const Matrix& g) {
      if (pa->requires_grad) pa->AccumulateExpr(g * pb->value.transpose());
      if (pb->requires_grad) pb->AccumulateExpr(pa->value.transpose() * g);
    };
  });
}

Tensor SparseMatMul(const ConstantMatrix& s, const Tensor& t) {
  if (s.cols() != t.rows()) {
    throw std::invalid_argument("SparseMatMul: shape mismatch (" + std::to_string(s.cols()) +
                                " vs " + std::to_string(t.rows()) + ")");
  }
  Node* pt = t.node();
  return MakeOp(s.Multiply(t.value()), {t}, [pt, s](Node*) {
    return [pt, s](const Matrix& g) { pt->Accumulate(s.TransposeMultiply(g)); };
  });
}

Tensor Relu(const Tensor& x) {
  Node* px = x.node();
  return MakeOp(x.value().cwiseMax(0.0), {x}, [px](Node*) {
    return [px](const Matrix& g) {
      px->AccumulateExpr((px->value.array() > 0.0).select(g.array(), 0.0).matrix());
    };
  });
}

Tensor Sigmoid(const Tensor& x) {
  Matrix y = (1.0 + (-x.value().array()).exp()).inverse().matrix();
  Node* px = x.node();
  return MakeOp(std::move(y), {x}, [px](Node* self) {
    return [px, self](const Matrix& g) {
      const auto& y = self->value.array();
      px->AccumulateExpr((g.array() * y * (1.0 - y)).matrix());
    };
  });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "Add");
  Node* pa = a.node();
  Node* pb = b.node();
  return MakeOp(a.value() + b.value(), {a, b}, [pa, pb](Node*) {
    return [pa, pb](const Matrix& g) {
      if (pa->requires_grad) pa->Accumulate(g);
      if (pb->requires_grad) pb->Accumulate(g);
    };
  });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "Sub");
  Node* pa = a.node();
  Node* pb = b.node();
  return MakeOp(a.value() - b.value(), {a, b}, [pa, pb](Node*) {
    return [pa, pb](const Matrix& g) {
      if (pa->requires_grad) pa->Accumulate(g);
      if (pb->requires_grad) pb->AccumulateExpr(-g);
    };
  });
}

Tensor Scale(const Tensor& x, double c) {
  Node* px = x.node();
  return MakeOp(x.value() * c, {x}, [px, c](Node*) {
    return [px, c](const Matrix& g) { px->AccumulateExpr(g * c); };
  });
}

Tensor Transpose(const Tensor& x) {
  Node* px = x.node();
  return MakeOp(x.value().transpose(), {x}, [px](Node*) {
    return [px](const Matrix& g) { px->AccumulateExpr(g.transpose()); };
  });
}

Tensor Gram(const Tensor& z) {
  const Index n = z.rows();
  Matrix g = Matrix::Zero(n, n);
  g.selfadjointView<Eigen::Lower>().rankUpdate(z.value());
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) g(i, j) = g(j, i);
  }
  Node* pz = z.node();
  return MakeOp(std::move(g), {z}, [pz](Node*) {
    return [pz](const Matrix& g) {
      const Matrix sym = g + g.transpose();
      pz->AccumulateExpr(sym * pz->value);
    };
  });
}

Tensor Sum(const Tensor& x) {
  Node* px = x.node();
  return MakeOp(Matrix::Constant(1, 1, x.value().sum()), {x}, [px](Node*) {
    return [px](const Matrix& g) {
      px->AccumulateExpr(Matrix::Constant(px->value.rows(), px->value.cols(), g(0, 0)));
    };
  });
}

Tensor RowSoftmax(const Tensor& x) {
  Matrix y(x.rows(), x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    const double m = x.value().row(i).maxCoeff();
    y.row(i) = (x.value().row(i).array() - m).exp();
    y.row(i) /= y.row(i).sum();
  }
  Node* px = x.node();
  return MakeOp(std::move(y), {x}, [px](Node* self) {
    return [px, self](const Matrix& g) {
      const Matrix& y = self->value;
      Matrix dx(y.rows(), y.cols());
      for (Index i = 0; i < y.rows(); ++i) {
        const double dot = g.row(i).dot(y.row(i));
        dx.row(i) = y.row(i).array() * (g.row(i).array() - dot);
      }
      px->Accumulate(dx);
    };
  });
}

Tensor ScalarMul(const Tensor& s, const Tensor& x) {
  RequireScalar(s, "ScalarMul");
  Node* ps = s.node();
  Node* px = x.node();
  return MakeOp(x.value() * s.item(), {s, x}, [ps, px](Node*) {
    return [ps, px](const Matrix& g) {
      if (ps->requires_grad) {
        ps->AccumulateExpr(Matrix::Constant(1, 1, g.cwiseProduct(px->value).sum()));
      }
      if (px->requires_grad) px->AccumulateExpr(g * ps->value(0, 0));
    };
  });
}

Tensor AddScalar(const Tensor& x, const Tensor& s) {
  RequireScalar(s, "AddScalar");
  Node* px = x.node();
  Node* ps = s.node();
  return MakeOp((x.value().array() + s.item()).matrix(), {x, s}, [px, ps](Node*) {
    return [px, ps](const Matrix& g) {
      if (px->requires_grad) px->Accumulate(g);
      if (ps->requires_grad) ps->AccumulateExpr(Matrix::Constant(1, 1, g.sum()));
    };
  });
}

Tensor Mix(const Tensor& a, const Tensor& b, const Tensor& w) {
  RequireSameShape(a, b, "Mix");
  RequireScalar(w, "Mix");
  const double wv = w.item();
  Node* pa = a.node();
  Node* pb = b.node();
  Node* pw = w.node();
  return MakeOp(wv * a.value() + (1.0 - wv) * b.value(), {a, b, w}, [pa, pb, pw](Node*) {
    return [pa, pb, pw](const Matrix& g) {
      const double wv = pw->value(0, 0);
      if (pa->requires_grad) pa->AccumulateExpr(g * wv);
      if (pb->requires_grad) pb->AccumulateExpr(g * (1.0 - wv));
      if (pw->requires_grad) {
        pw->AccumulateExpr(
            Matrix::Constant(1, 1, g.cwiseProduct(pa->value - pb->value).sum()));
      }
    };
  });
}

Tensor ConcatCols(std::span<const Tensor> parts) {
  if (parts.empty()) throw std::invalid_argument("ConcatCols: no inputs");
  const Index rows = parts.front().rows();
  Index cols = 0;
  for (const Tensor& p : parts) {
    if (p.rows() != rows) throw std::invalid_argument("ConcatCols: row counts differ");
    cols += p.cols();
  }
  Matrix v(rows, cols);
  std::vector<Node*> nodes;
  std::vector<Index> offsets;
  Index off = 0;
  for (const Tensor& p : parts) {
    v.middleCols(off, p.cols()) = p.value();
    nodes.push_back(p.node());
    offsets.push_back(off);
    off += p.cols();
  }
  return MakeOp(std::move(v), std::vector<Tensor>(parts.begin(), parts.end()),
                [nodes, offsets](Node*) {
                  return [nodes, offsets](const Matrix& g) {
                    for (std::size_t k = 0; k < nodes.size(); ++k) {
                      if (!nodes[k]->requires_grad) continue;
                      nodes[k]->AccumulateExpr(g.middleCols(offsets[k], nodes[k]->value.cols()));
                    }
                  };
                });
}

Tensor Column(const Tensor& x, Index j) {
  if (j < 0 || j >= x.cols()) throw std::invalid_argument("Column: index out of range");
  Node* px = x.node();
  return MakeOp(x.value().col(j), {x}, [px, j](Node*) {
    return [px, j](const Matrix& g) {
      Matrix dx = Matrix::Zero(px->value.rows(), px->value.cols());
      dx.col(j) = g.col(0);
      px->Accumulate(dx);
    };
  });
}

Tensor RowScale(const Tensor& x, const Tensor& w) {
  if (w.rows() != x.rows() || w.cols() != 1) {
    throw std::invalid_argument("RowScale: weights must be rows x 1");
  }
  Node* px = x.node();
  Node* pw = w.node();
  Matrix v = w.value().col(0).asDiagonal() * x.value();
  return MakeOp(std::move(v), {x, w}, [px, pw](Node*) {
    return [px, pw](const Matrix& g) {
      if (px->requires_grad) px->AccumulateExpr(pw->value.col(0).asDiagonal() * g);
      if (pw->requires_grad) {
        pw->AccumulateExpr(g.cwiseProduct(px->value).rowwise().sum());
      }
    };
  });
}

Tensor Dropout(const Tensor& x, double p, std::mt19937_64& rng) {
  if (p < 0.0 || p >= 1.0) throw std::invalid_argument("Dropout: p must lie in [0, 1)");
  if (p == 0.0) return x;
  std::bernoulli_distribution keep(1.0 - p);
  Matrix mask(x.rows(), x.cols());
  const double scale = 1.0 / (1.0 - p);
  for (Index i = 0; i < mask.size(); ++i) mask.data()[i] = keep(rng) ? scale : 0.0;
  Node* px = x.node();
  Matrix v = x.value().cwiseProduct(mask);
  return MakeOp(std::move(v), {x}, [px, mask = std::move(mask)](Node*) {
    return [px, mask](const Matrix& g) { px->AccumulateExpr(g.cwiseProduct(mask)); };
  });
}

Tensor MaskedRowMse(const Tensor& pred, const Matrix& target, const NodeMask& rows) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw std::invalid_argument("MaskedRowMse: shape mismatch");
  }
  if (static_cast<Index>(rows.size()) != pred.rows()) {
    throw std::invalid_argument("MaskedRowMse: mask length mismatch");
  }
  RequireFinite(pred.value(), "MaskedRowMse");
  const Index selected = static_cast<Index>(std::count(rows.begin(), rows.end(), true));
  if (selected == 0) throw std::invalid_argument("MaskedRowMse: no rows selected");
  const double denom = static_cast<double>(selected) * static_cast<double>(pred.cols());

  Matrix diff = Matrix::Zero(pred.rows(), pred.cols());
  for (Index i = 0; i < pred.rows(); ++i) {
    if (rows[static_cast<std::size_t>(i)]) diff.row(i) = pred.value().row(i) - target.row(i);
  }
  const double loss = diff.squaredNorm() / denom;
  Node* pp = pred.node();
  return MakeOp(Matrix::Constant(1, 1, loss), {pred},
                [pp, diff = std::move(diff), denom](Node*) mutable {
                  diff *= 2.0 / denom;
                  return [pp, d = std::move(diff)](const Matrix& g) {
                    pp->AccumulateExpr(d * g(0, 0));
                  };
                });
}

Tensor WeightedBce(const Tensor& prob, const Matrix& target, const Matrix& weights,
                   double denominator) {
  if (prob.rows() != target.rows() || prob.cols() != target.cols() ||
      prob.rows() != weights.rows() || prob.cols() != weights.cols()) {
    throw std::invalid_argument("WeightedBce: shape mismatch");
  }
  RequireFinite(prob.value(), "WeightedBce");
  const double denom = denominator > 0.0
                           ? denominator
                           : static_cast<double>(prob.rows()) * static_cast<double>(prob.cols());
  const Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> q =
      prob.value().array().max(kProbClamp).min(1.0 - kProbClamp);
  const auto t = target.array();
  const auto w = weights.array();
  double total = 0.0;
  if (((t == 0.0) || (t == 1.0)).all()) {
    // Binary targets need one log per entry: the probability of the true label.
    total = -(w * (t * q + (1.0 - t) * (1.0 - q)).log()).sum();
  } else {
    total = -(w * (t * q.log() + (1.0 - t) * (1.0 - q).log())).sum();
  }
  Node* pp = prob.node();
  return MakeOp(Matrix::Constant(1, 1, total / denom), {prob}, [&](Node*) {
    const auto raw = prob.value().array();
    const auto clamped = (raw < kProbClamp) || (raw > 1.0 - kProbClamp);
    Matrix local = clamped.select(0.0, w * (q - t) / (q * (1.0 - q)) / denom).matrix();
    return [pp, local = std::move(local)](const Matrix& g) {
      pp->AccumulateExpr(local * g(0, 0));
    };
  });
}

Tensor PairBceFromEmbeddings(const Tensor& z, std::span<const PairSample> pairs) {
  RequireFinite(z.value(), "PairBceFromEmbeddings");
  if (pairs.empty()) throw std::invalid_argument("PairBceFromEmbeddings: no pairs");
  const Matrix& zv = z.value();
  for (const PairSample& s : pairs) {
    if (s.i < 0 || s.j < 0 || s.i >= zv.rows() || s.j >= zv.rows()) {
      throw std::invalid_argument("PairBceFromEmbeddings: pair index out of range");
    }
  }
  const double count = static_cast<double>(pairs.size());
  double total = 0.0;
  std::vector<double> coeff(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const PairSample& s = pairs[k];
    const double p = Logistic(zv.row(s.i).dot(zv.row(s.j)));
    const double q = Clamp(p);
    total -= s.weight * (s.target * std::log(q) + (1.0 - s.target) * std::log1p(-q));
    coeff[k] = Clamped(p) ? 0.0 : s.weight * (p - s.target) / count;
  }
  Node* pz = z.node();
  std::vector<PairSample> kept(pairs.begin(), pairs.end());
  return MakeOp(Matrix::Constant(1, 1, total / count), {z},
                [pz, kept = std::move(kept), coeff = std::move(coeff)](Node*) {
                  return [pz, kept, coeff](const Matrix& g) {
                    const Matrix& zv = pz->value;
                    Matrix dz = Matrix::Zero(zv.rows(), zv.cols());
                    for (std::size_t k = 0; k < kept.size(); ++k) {
                      const double c = coeff[k] * g(0, 0);
                      dz.row(kept[k].i) += c * zv.row(kept[k].j);
                      dz.row(kept[k].j) += c * zv.row(kept[k].i);
                    }
                    pz->Accumulate(dz);
                  };
                });
}

Tensor SoftmaxCrossEntropy(const Tensor& logits, std::span<const int> labels,
                           std::span<const Index> rows) {
  RequireFinite(logits.value(), "SoftmaxCrossEntropy");
  if (static_cast<Index>(labels.size()) != logits.rows()) {
    throw std::invalid_argument("SoftmaxCrossEntropy: label count mismatch");
  }
  if (rows.empty()) throw std::invalid_argument("SoftmaxCrossEntropy: no rows selected");
  const Matrix& x = logits.value();
  const double n = static_cast<double>(rows.size());
  Matrix local = Matrix::Zero(x.rows(), x.cols());
  double total = 0.0;
  for (Index r : rows) {
    const int label = labels[static_cast<std::size_t>(r)];
    if (label < 0 || label >= x.cols()) {
      throw std::invalid_argument("SoftmaxCrossEntropy: label out of range");
    }
    const double m = x.row(r).maxCoeff();
    const Eigen::RowVectorXd e = (x.row(r).array() - m).exp();
    const double z = e.sum();
    total -= (x(r, label) - m) - std::log(z);
    local.row(r) += e / (z * n);
    local(r, label) -= 1.0 / n;
  }
  Node* pl = logits.node();
  return MakeOp(Matrix::Constant(1, 1, total / n), {logits},
                [pl, local = std::move(local)](Node*) {
                  return [pl, local](const Matrix& g) { pl->AccumulateExpr(local * g(0, 0)); };
                });
}

}  // namespace amgae::ad
