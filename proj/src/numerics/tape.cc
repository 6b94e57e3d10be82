// numerics/tape.cc

// Copyright 2026  The chainlet authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "numerics/tape.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "base/error.h"
#include "base/rng.h"

namespace chainlet {

namespace {

using EMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<EMat>;
using ConstMapMat = Eigen::Map<const EMat>;

ConstMapMat AsMat(const Tensor &t) {
  return ConstMapMat(t.Data(), t.Rows(), t.Cols());
}

MapMat AsMat(std::vector<double> &buf, int64_t rows, int64_t cols) {
  return MapMat(buf.data(), rows, cols);
}

void CheckFinite(const Tensor &t, const char *op) {
  if (!t.AllFinite())
    CL_TRAIN_ERR << "non-finite values produced by " << op;
}

void EnsureGrad(Tape::Node *n) {
  if (n->grad.empty()) n->grad.assign(n->Value().NumEl(), 0.0);
}

double GeluValue(double x) { return 0.5 * x * (1.0 + std::erf(x * M_SQRT1_2)); }

double GeluDeriv(double x) {
  static const double kInvSqrt2Pi = 0.3989422804014327;
  return 0.5 * (1.0 + std::erf(x * M_SQRT1_2)) +
         x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

}  // namespace

Tape::Node *Tape::NewNode(Tensor value, bool requires_grad,
                          std::function<void()> backward) {
  auto node = std::make_unique<Node>();
  node->owned = std::move(value);
  node->requires_grad = requires_grad;
  node->is_leaf = false;  // Leaf()/Param() override after construction
  Node *raw = node.get();
  nodes_.push_back(std::move(node));
  backward_steps_.push_back(requires_grad ? std::move(backward) : nullptr);
  return raw;
}

Tape::Node *Tape::Leaf(Tensor value, bool requires_grad) {
  CheckFinite(value, "Leaf");
  Node *n = NewNode(std::move(value), requires_grad, nullptr);
  n->is_leaf = true;
  return n;
}

Tape::Node *Tape::Param(Tensor *param) {
  CL_REQUIRE(param != nullptr);
  CheckFinite(*param, "Param");
  Node *n = NewNode(Tensor{}, param->requires_grad, nullptr);
  n->is_leaf = true;
  n->external = param;
  n->bound = param;
  return n;
}

Tape::Node *Tape::Add(Node *a, Node *b) {
  CL_REQUIRE(a->Value().SameShape(b->Value()));
  Tensor out = a->Value();
  const double *bd = b->Value().Data();
  for (int64_t i = 0; i < out.NumEl(); ++i) out.Data()[i] += bd[i];
  CheckFinite(out, "Add");
  bool rg = a->requires_grad || b->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, b, y] {
      if (a->requires_grad) {
        EnsureGrad(a);
        for (size_t i = 0; i < y->grad.size(); ++i) a->grad[i] += y->grad[i];
      }
      if (b->requires_grad) {
        EnsureGrad(b);
        for (size_t i = 0; i < y->grad.size(); ++i) b->grad[i] += y->grad[i];
      }
    };
  }
  return y;
}

Tape::Node *Tape::Sub(Node *a, Node *b) {
  CL_REQUIRE(a->Value().SameShape(b->Value()));
  Tensor out = a->Value();
  const double *bd = b->Value().Data();
  for (int64_t i = 0; i < out.NumEl(); ++i) out.Data()[i] -= bd[i];
  CheckFinite(out, "Sub");
  bool rg = a->requires_grad || b->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, b, y] {
      if (a->requires_grad) {
        EnsureGrad(a);
        for (size_t i = 0; i < y->grad.size(); ++i) a->grad[i] += y->grad[i];
      }
      if (b->requires_grad) {
        EnsureGrad(b);
        for (size_t i = 0; i < y->grad.size(); ++i) b->grad[i] -= y->grad[i];
      }
    };
  }
  return y;
}

Tape::Node *Tape::Mul(Node *a, Node *b) {
  CL_REQUIRE(a->Value().SameShape(b->Value()));
  Tensor out = a->Value();
  const double *bd = b->Value().Data();
  for (int64_t i = 0; i < out.NumEl(); ++i) out.Data()[i] *= bd[i];
  CheckFinite(out, "Mul");
  bool rg = a->requires_grad || b->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, b, y] {
      if (a->requires_grad) {
        EnsureGrad(a);
        const double *bv = b->Value().Data();
        for (size_t i = 0; i < y->grad.size(); ++i)
          a->grad[i] += y->grad[i] * bv[i];
      }
      if (b->requires_grad) {
        EnsureGrad(b);
        const double *av = a->Value().Data();
        for (size_t i = 0; i < y->grad.size(); ++i)
          b->grad[i] += y->grad[i] * av[i];
      }
    };
  }
  return y;
}

Tape::Node *Tape::Scale(Node *a, double factor) {
  Tensor out = a->Value();
  for (int64_t i = 0; i < out.NumEl(); ++i) out.Data()[i] *= factor;
  CheckFinite(out, "Scale");
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y, factor] {
      EnsureGrad(a);
      for (size_t i = 0; i < y->grad.size(); ++i)
        a->grad[i] += factor * y->grad[i];
    };
  }
  return y;
}

Tape::Node *Tape::AddRowVector(Node *matrix, Node *row) {
  const Tensor &m = matrix->Value();
  const Tensor &v = row->Value();
  CL_REQUIRE(m.Rank() == 2 && v.Rank() == 1 && v.Cols() == m.Cols());
  Tensor out = m;
  int64_t rows = m.Rows(), cols = m.Cols();
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t c = 0; c < cols; ++c) out.Data()[r * cols + c] += v.Data()[c];
  CheckFinite(out, "AddRowVector");
  bool rg = matrix->requires_grad || row->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [matrix, row, y, rows, cols] {
      if (matrix->requires_grad) {
        EnsureGrad(matrix);
        for (size_t i = 0; i < y->grad.size(); ++i)
          matrix->grad[i] += y->grad[i];
      }
      if (row->requires_grad) {
        EnsureGrad(row);
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t c = 0; c < cols; ++c)
            row->grad[c] += y->grad[r * cols + c];
      }
    };
  }
  return y;
}

Tape::Node *Tape::MulRowVector(Node *matrix, Node *row) {
  const Tensor &m = matrix->Value();
  const Tensor &v = row->Value();
  CL_REQUIRE(m.Rank() == 2 && v.Rank() == 1 && v.Cols() == m.Cols());
  Tensor out = m;
  int64_t rows = m.Rows(), cols = m.Cols();
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t c = 0; c < cols; ++c) out.Data()[r * cols + c] *= v.Data()[c];
  CheckFinite(out, "MulRowVector");
  bool rg = matrix->requires_grad || row->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [matrix, row, y, rows, cols] {
      if (matrix->requires_grad) {
        EnsureGrad(matrix);
        const double *v = row->Value().Data();
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t c = 0; c < cols; ++c)
            matrix->grad[r * cols + c] += y->grad[r * cols + c] * v[c];
      }
      if (row->requires_grad) {
        EnsureGrad(row);
        const double *mv = matrix->Value().Data();
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t c = 0; c < cols; ++c)
            row->grad[c] += y->grad[r * cols + c] * mv[r * cols + c];
      }
    };
  }
  return y;
}

Tape::Node *Tape::MatMul(Node *a, Node *b) {
  const Tensor &av = a->Value();
  const Tensor &bv = b->Value();
  CL_REQUIRE(av.Rank() == 2 && bv.Rank() == 2);
  if (av.Cols() != bv.Rows())
    CL_CONTRACT_ERR << "MatMul inner dimension mismatch: " << av.Cols()
                    << " vs " << bv.Rows();
  Tensor out({av.Rows(), bv.Cols()});
  MapMat(out.Data(), out.Rows(), out.Cols()).noalias() = AsMat(av) * AsMat(bv);
  CheckFinite(out, "MatMul");
  bool rg = a->requires_grad || b->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, b, y] {
      const Tensor &yv = y->Value();
      ConstMapMat dy(y->grad.data(), yv.Rows(), yv.Cols());
      if (a->requires_grad) {
        EnsureGrad(a);
        AsMat(a->grad, a->Value().Rows(), a->Value().Cols()).noalias() +=
            dy * AsMat(b->Value()).transpose();
      }
      if (b->requires_grad) {
        EnsureGrad(b);
        AsMat(b->grad, b->Value().Rows(), b->Value().Cols()).noalias() +=
            AsMat(a->Value()).transpose() * dy;
      }
    };
  }
  return y;
}

Tape::Node *Tape::Transpose(Node *a) {
  const Tensor &av = a->Value();
  CL_REQUIRE(av.Rank() == 2);
  Tensor out({av.Cols(), av.Rows()});
  MapMat(out.Data(), out.Rows(), out.Cols()) = AsMat(av).transpose();
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y] {
      EnsureGrad(a);
      const Tensor &yv = y->Value();
      ConstMapMat dy(y->grad.data(), yv.Rows(), yv.Cols());
      AsMat(a->grad, a->Value().Rows(), a->Value().Cols()) += dy.transpose();
    };
  }
  return y;
}

Tape::Node *Tape::Tanh(Node *a) {
  Tensor out = a->Value();
  for (int64_t i = 0; i < out.NumEl(); ++i)
    out.Data()[i] = std::tanh(out.Data()[i]);
  CheckFinite(out, "Tanh");
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y] {
      EnsureGrad(a);
      const double *yv = y->Value().Data();
      for (size_t i = 0; i < y->grad.size(); ++i)
        a->grad[i] += y->grad[i] * (1.0 - yv[i] * yv[i]);
    };
  }
  return y;
}

Tape::Node *Tape::Gelu(Node *a) {
  Tensor out = a->Value();
  for (int64_t i = 0; i < out.NumEl(); ++i)
    out.Data()[i] = GeluValue(out.Data()[i]);
  CheckFinite(out, "Gelu");
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y] {
      EnsureGrad(a);
      const double *xv = a->Value().Data();
      for (size_t i = 0; i < y->grad.size(); ++i)
        a->grad[i] += y->grad[i] * GeluDeriv(xv[i]);
    };
  }
  return y;
}

Tape::Node *Tape::Relu(Node *a) {
  Tensor out = a->Value();
  for (int64_t i = 0; i < out.NumEl(); ++i)
    out.Data()[i] = std::max(0.0, out.Data()[i]);
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y] {
      EnsureGrad(a);
      const double *xv = a->Value().Data();
      for (size_t i = 0; i < y->grad.size(); ++i)
        if (xv[i] > 0.0) a->grad[i] += y->grad[i];
    };
  }
  return y;
}

Tape::Node *Tape::SoftmaxRows(Node *a) {
  const Tensor &av = a->Value();
  CL_REQUIRE(av.Rank() == 2);
  Tensor out = av;
  int64_t rows = av.Rows(), cols = av.Cols();
  for (int64_t r = 0; r < rows; ++r) {
    double *row = out.Data() + r * cols;
    double hi = *std::max_element(row, row + cols);
    double sum = 0.0;
    for (int64_t c = 0; c < cols; ++c) {
      row[c] = std::exp(row[c] - hi);
      sum += row[c];
    }
    for (int64_t c = 0; c < cols; ++c) row[c] /= sum;
  }
  CheckFinite(out, "SoftmaxRows");
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y, rows, cols] {
      EnsureGrad(a);
      const double *yv = y->Value().Data();
      for (int64_t r = 0; r < rows; ++r) {
        const double *yr = yv + r * cols;
        const double *dyr = y->grad.data() + r * cols;
        double dot = 0.0;
        for (int64_t c = 0; c < cols; ++c) dot += dyr[c] * yr[c];
        double *da = a->grad.data() + r * cols;
        for (int64_t c = 0; c < cols; ++c) da[c] += yr[c] * (dyr[c] - dot);
      }
    };
  }
  return y;
}

Tape::Node *Tape::LayerNormRows(Node *a, Node *gain, Node *bias, double eps) {
  const Tensor &av = a->Value();
  const Tensor &g = gain->Value();
  const Tensor &b = bias->Value();
  CL_REQUIRE(av.Rank() == 2 && g.Rank() == 1 && b.Rank() == 1);
  CL_REQUIRE(g.Cols() == av.Cols() && b.Cols() == av.Cols());
  int64_t rows = av.Rows(), cols = av.Cols();
  Tensor out({rows, cols});
  // Standardized activations are kept for the backward pass.
  auto xhat = std::make_shared<std::vector<double>>(rows * cols);
  auto inv_sigma = std::make_shared<std::vector<double>>(rows);
  for (int64_t r = 0; r < rows; ++r) {
    const double *x = av.Data() + r * cols;
    double mean = 0.0;
    for (int64_t c = 0; c < cols; ++c) mean += x[c];
    mean /= static_cast<double>(cols);
    double var = 0.0;
    for (int64_t c = 0; c < cols; ++c) var += (x[c] - mean) * (x[c] - mean);
    var /= static_cast<double>(cols);
    double inv = 1.0 / std::sqrt(var + eps);
    (*inv_sigma)[r] = inv;
    for (int64_t c = 0; c < cols; ++c) {
      double xh = (x[c] - mean) * inv;
      (*xhat)[r * cols + c] = xh;
      out.Data()[r * cols + c] = xh * g.Data()[c] + b.Data()[c];
    }
  }
  CheckFinite(out, "LayerNormRows");
  bool rg = a->requires_grad || gain->requires_grad || bias->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, gain, bias, y, xhat, inv_sigma, rows, cols] {
      const double *dy = y->grad.data();
      if (gain->requires_grad) {
        EnsureGrad(gain);
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t c = 0; c < cols; ++c)
            gain->grad[c] += dy[r * cols + c] * (*xhat)[r * cols + c];
      }
      if (bias->requires_grad) {
        EnsureGrad(bias);
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t c = 0; c < cols; ++c) bias->grad[c] += dy[r * cols + c];
      }
      if (a->requires_grad) {
        EnsureGrad(a);
        const double *g = gain->Value().Data();
        for (int64_t r = 0; r < rows; ++r) {
          double mean_dxhat = 0.0, mean_dxhat_xhat = 0.0;
          for (int64_t c = 0; c < cols; ++c) {
            double dxh = dy[r * cols + c] * g[c];
            mean_dxhat += dxh;
            mean_dxhat_xhat += dxh * (*xhat)[r * cols + c];
          }
          mean_dxhat /= static_cast<double>(cols);
          mean_dxhat_xhat /= static_cast<double>(cols);
          for (int64_t c = 0; c < cols; ++c) {
            double dxh = dy[r * cols + c] * g[c];
            a->grad[r * cols + c] +=
                (*inv_sigma)[r] *
                (dxh - mean_dxhat - (*xhat)[r * cols + c] * mean_dxhat_xhat);
          }
        }
      }
    };
  }
  return y;
}

Tape::Node *Tape::NormalizeColumns(Node *a, double eps) {
  const Tensor &av = a->Value();
  CL_REQUIRE(av.Rank() == 2);
  int64_t rows = av.Rows(), cols = av.Cols();
  Tensor out({rows, cols});
  auto inv_sigma = std::make_shared<std::vector<double>>(cols);
  for (int64_t c = 0; c < cols; ++c) {
    double mean = 0.0;
    for (int64_t r = 0; r < rows; ++r) mean += av.Data()[r * cols + c];
    mean /= static_cast<double>(rows);
    double var = 0.0;
    for (int64_t r = 0; r < rows; ++r) {
      double d = av.Data()[r * cols + c] - mean;
      var += d * d;
    }
    var /= static_cast<double>(rows);
    double inv = 1.0 / std::sqrt(var + eps);
    (*inv_sigma)[c] = inv;
    for (int64_t r = 0; r < rows; ++r)
      out.Data()[r * cols + c] = (av.Data()[r * cols + c] - mean) * inv;
  }
  CheckFinite(out, "NormalizeColumns");
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y, inv_sigma, rows, cols] {
      EnsureGrad(a);
      const double *yv = y->Value().Data();
      const double *dy = y->grad.data();
      for (int64_t c = 0; c < cols; ++c) {
        double mean_dy = 0.0, mean_dy_y = 0.0;
        for (int64_t r = 0; r < rows; ++r) {
          mean_dy += dy[r * cols + c];
          mean_dy_y += dy[r * cols + c] * yv[r * cols + c];
        }
        mean_dy /= static_cast<double>(rows);
        mean_dy_y /= static_cast<double>(rows);
        for (int64_t r = 0; r < rows; ++r)
          a->grad[r * cols + c] +=
              (*inv_sigma)[c] * (dy[r * cols + c] - mean_dy -
                                 yv[r * cols + c] * mean_dy_y);
      }
    };
  }
  return y;
}

Tape::Node *Tape::SpliceRows(Node *a, std::span<const int> offsets,
                             int stride) {
  const Tensor &av = a->Value();
  CL_REQUIRE(av.Rank() == 2);
  CL_REQUIRE(!offsets.empty() && stride >= 1);
  int64_t rows = av.Rows(), cols = av.Cols();
  int64_t out_rows = (rows + stride - 1) / stride;
  int64_t k = static_cast<int64_t>(offsets.size());
  Tensor out({out_rows, k * cols});
  std::vector<int> offs(offsets.begin(), offsets.end());
  for (int64_t i = 0; i < out_rows; ++i) {
    int64_t center = i * stride;
    for (int64_t j = 0; j < k; ++j) {
      int64_t src = std::clamp<int64_t>(center + offs[j], 0, rows - 1);
      const double *from = av.Data() + src * cols;
      double *to = out.Data() + i * (k * cols) + j * cols;
      std::copy(from, from + cols, to);
    }
  }
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y, offs, stride, rows, cols, out_rows, k] {
      EnsureGrad(a);
      for (int64_t i = 0; i < out_rows; ++i) {
        int64_t center = i * stride;
        for (int64_t j = 0; j < k; ++j) {
          int64_t src = std::clamp<int64_t>(center + offs[j], 0, rows - 1);
          const double *dy = y->grad.data() + i * (k * cols) + j * cols;
          double *da = a->grad.data() + src * cols;
          for (int64_t c = 0; c < cols; ++c) da[c] += dy[c];
        }
      }
    };
  }
  return y;
}

Tape::Node *Tape::SliceCols(Node *a, int64_t begin, int64_t end) {
  const Tensor &av = a->Value();
  CL_REQUIRE(av.Rank() == 2);
  CL_REQUIRE(0 <= begin && begin < end && end <= av.Cols());
  int64_t rows = av.Rows(), cols = av.Cols(), width = end - begin;
  Tensor out({rows, width});
  for (int64_t r = 0; r < rows; ++r)
    std::copy(av.Data() + r * cols + begin, av.Data() + r * cols + end,
              out.Data() + r * width);
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y, begin, rows, cols, width] {
      EnsureGrad(a);
      for (int64_t r = 0; r < rows; ++r) {
        const double *dy = y->grad.data() + r * width;
        double *da = a->grad.data() + r * cols + begin;
        for (int64_t c = 0; c < width; ++c) da[c] += dy[c];
      }
    };
  }
  return y;
}

Tape::Node *Tape::ConcatCols(std::span<Node *const> parts) {
  CL_REQUIRE(!parts.empty());
  int64_t rows = parts[0]->Value().Rows();
  int64_t total = 0;
  bool rg = false;
  for (Node *p : parts) {
    CL_REQUIRE(p->Value().Rank() == 2 && p->Value().Rows() == rows);
    total += p->Value().Cols();
    rg = rg || p->requires_grad;
  }
  Tensor out({rows, total});
  int64_t at = 0;
  for (Node *p : parts) {
    int64_t w = p->Value().Cols();
    for (int64_t r = 0; r < rows; ++r)
      std::copy(p->Value().Data() + r * w, p->Value().Data() + (r + 1) * w,
                out.Data() + r * total + at);
    at += w;
  }
  std::vector<Node *> held(parts.begin(), parts.end());
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [held, y, rows, total] {
      int64_t at = 0;
      for (Node *p : held) {
        int64_t w = p->Value().Cols();
        if (p->requires_grad) {
          EnsureGrad(p);
          for (int64_t r = 0; r < rows; ++r) {
            const double *dy = y->grad.data() + r * total + at;
            double *dp = p->grad.data() + r * w;
            for (int64_t c = 0; c < w; ++c) dp[c] += dy[c];
          }
        }
        at += w;
      }
    };
  }
  return y;
}

Tape::Node *Tape::SumAll(Node *a) {
  double sum = 0.0;
  const double *x = a->Value().Data();
  for (int64_t i = 0; i < a->Value().NumEl(); ++i) sum += x[i];
  Tensor out = Tensor::Scalar(sum);
  CheckFinite(out, "SumAll");
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y] {
      EnsureGrad(a);
      double d = y->grad[0];
      for (double &g : a->grad) g += d;
    };
  }
  return y;
}

Tape::Node *Tape::MeanAbsDiff(Node *a, Node *b) {
  CL_REQUIRE(a->Value().SameShape(b->Value()));
  int64_t n = a->Value().NumEl();
  const double *av = a->Value().Data();
  const double *bv = b->Value().Data();
  double sum = 0.0;
  for (int64_t i = 0; i < n; ++i) sum += std::abs(av[i] - bv[i]);
  Tensor out = Tensor::Scalar(sum / static_cast<double>(n));
  CheckFinite(out, "MeanAbsDiff");
  bool rg = a->requires_grad || b->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, b, y, n] {
      double d = y->grad[0] / static_cast<double>(n);
      const double *av = a->Value().Data();
      const double *bv = b->Value().Data();
      if (a->requires_grad) {
        EnsureGrad(a);
        for (int64_t i = 0; i < n; ++i) {
          double diff = av[i] - bv[i];
          if (diff > 0)
            a->grad[i] += d;
          else if (diff < 0)
            a->grad[i] -= d;
        }
      }
      if (b->requires_grad) {
        EnsureGrad(b);
        for (int64_t i = 0; i < n; ++i) {
          double diff = av[i] - bv[i];
          if (diff > 0)
            b->grad[i] -= d;
          else if (diff < 0)
            b->grad[i] += d;
        }
      }
    };
  }
  return y;
}

Tape::Node *Tape::Dropout(Node *a, double prob, Rng *rng) {
  CL_REQUIRE(prob >= 0.0 && prob < 1.0);
  if (prob == 0.0) return a;
  CL_REQUIRE(rng != nullptr);
  int64_t n = a->Value().NumEl();
  auto mask = std::make_shared<std::vector<double>>(n);
  double keep = 1.0 - prob;
  for (int64_t i = 0; i < n; ++i)
    (*mask)[i] = rng->NextDouble() < prob ? 0.0 : 1.0 / keep;
  Tensor out = a->Value();
  for (int64_t i = 0; i < n; ++i) out.Data()[i] *= (*mask)[i];
  bool rg = a->requires_grad;
  Node *y = NewNode(std::move(out), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [a, y, mask] {
      EnsureGrad(a);
      for (size_t i = 0; i < y->grad.size(); ++i)
        a->grad[i] += y->grad[i] * (*mask)[i];
    };
  }
  return y;
}

Tape::Node *Tape::External(Node *input, double value, Tensor input_grad) {
  CL_REQUIRE(input_grad.SameShape(input->Value()));
  CheckFinite(input_grad, "External");
  if (!std::isfinite(value)) CL_TRAIN_ERR << "non-finite External loss value";
  bool rg = input->requires_grad;
  auto grad = std::make_shared<Tensor>(std::move(input_grad));
  Node *y = NewNode(Tensor::Scalar(value), rg, nullptr);
  if (rg) {
    backward_steps_.back() = [input, y, grad] {
      EnsureGrad(input);
      double d = y->grad[0];
      const double *g = grad->Data();
      for (size_t i = 0; i < input->grad.size(); ++i) input->grad[i] += d * g[i];
    };
  }
  return y;
}

void Tape::Backward(Node *root) {
  CL_REQUIRE(root != nullptr);
  if (root->Value().NumEl() != 1)
    CL_CONTRACT_ERR << "Backward root must be scalar, got "
                    << root->Value().NumEl() << " elements";
  if (!root->requires_grad) return;  // nothing depends on any leaf
  // Intermediate grads are per-pass scratch; leaf grads accumulate.
  for (auto &node : nodes_)
    if (!node->is_leaf && !node->grad.empty())
      std::fill(node->grad.begin(), node->grad.end(), 0.0);
  EnsureGrad(root);
  root->grad[0] += 1.0;
  for (size_t i = nodes_.size(); i-- > 0;) {
    if (backward_steps_[i] && nodes_[i]->requires_grad &&
        !nodes_[i]->grad.empty())
      backward_steps_[i]();
  }
  for (auto &node : nodes_) {
    if (!node->is_leaf || node->grad.empty()) continue;
    for (double g : node->grad)
      if (!std::isfinite(g)) CL_TRAIN_ERR << "non-finite gradient in Backward";
  }
}

void Tape::AccumulateParamGrads(double scale) {
  for (auto &node : nodes_) {
    if (node->bound == nullptr || !node->requires_grad || node->grad.empty())
      continue;
    auto &target = node->bound->Grad();
    for (size_t i = 0; i < node->grad.size(); ++i)
      target[i] += scale * node->grad[i];
  }
}

}  // namespace chainlet
