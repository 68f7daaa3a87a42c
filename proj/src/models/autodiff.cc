// Copyright 2026 The tsaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsaudit/models/autodiff.h"

#include <cassert>
#include <cmath>
#include <numbers>

namespace tsaudit::models::autodiff {

Var Tape::Push(Mat value, bool needs_grad,
               std::function<void(Tape&)> backward) {
  Node node;
  node.value = std::move(value);
  node.needs_grad = needs_grad;
  if (needs_grad) node.backward = std::move(backward);
  nodes_.push_back(std::move(node));
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::Constant(Mat value) { return Push(std::move(value), false, {}); }

Var Tape::Parameter(Mat value) { return Push(std::move(value), true, {}); }

Var Tape::MatMul(Var a, Var b) {
  const Var out{static_cast<int>(nodes_.size())};
  return Push(value(a) * value(b), needs(a) || needs(b), [=](Tape& t) {
    const Mat& go = t.g(out);
    if (t.needs(a)) t.g(a).noalias() += go * t.value(b).transpose();
    if (t.needs(b)) t.g(b).noalias() += t.value(a).transpose() * go;
  });
}

Var Tape::Transpose(Var a) {
  const Var out{static_cast<int>(nodes_.size())};
  return Push(value(a).transpose(), needs(a),
              [=](Tape& t) { t.g(a) += t.g(out).transpose(); });
}

Var Tape::Add(Var a, Var b) {
  assert(value(a).rows() == value(b).rows() &&
         value(a).cols() == value(b).cols());
  const Var out{static_cast<int>(nodes_.size())};
  return Push(value(a) + value(b), needs(a) || needs(b), [=](Tape& t) {
    if (t.needs(a)) t.g(a) += t.g(out);
    if (t.needs(b)) t.g(b) += t.g(out);
  });
}

Var Tape::AddRow(Var a, Var row) {
  assert(value(row).rows() == 1 && value(row).cols() == value(a).cols());
  const Var out{static_cast<int>(nodes_.size())};
  Mat result = value(a).rowwise() + value(row).row(0);
  return Push(std::move(result), needs(a) || needs(row), [=](Tape& t) {
    if (t.needs(a)) t.g(a) += t.g(out);
    if (t.needs(row)) t.g(row) += t.g(out).colwise().sum();
  });
}

Var Tape::Scale(Var a, double factor) {
  const Var out{static_cast<int>(nodes_.size())};
  return Push(value(a) * factor, needs(a),
              [=](Tape& t) { t.g(a) += factor * t.g(out); });
}

Var Tape::Tanh(Var a) {
  const Var out{static_cast<int>(nodes_.size())};
  return Push(value(a).array().tanh().matrix(), needs(a), [=](Tape& t) {
    const auto y = t.value(out).array();
    t.g(a).array() += t.g(out).array() * (1.0 - y.square());
  });
}

Var Tape::Gelu(Var a) {
  constexpr double kC = 0.7978845608028654;  // sqrt(2 / pi)
  constexpr double kK = 0.044715;
  const Var out{static_cast<int>(nodes_.size())};
  const auto x = value(a).array();
  Mat th = (kC * (x + kK * x.cube())).tanh().matrix();
  Mat result = (0.5 * x * (1.0 + th.array())).matrix();
  return Push(std::move(result), needs(a), [=, th = std::move(th)](Tape& t) {
    const auto xv = t.value(a).array();
    const auto tv = th.array();
    const auto dydx = 0.5 * (1.0 + tv) + 0.5 * xv * (1.0 - tv.square()) * kC *
                                             (1.0 + 3.0 * kK * xv.square());
    t.g(a).array() += t.g(out).array() * dydx;
  });
}

Var Tape::SoftmaxRows(Var a) {
  const Var out{static_cast<int>(nodes_.size())};
  Mat y = value(a);
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    const double peak = y.row(r).maxCoeff();
    y.row(r) = (y.row(r).array() - peak).exp().matrix();
    y.row(r) /= y.row(r).sum();
  }
  return Push(std::move(y), needs(a), [=](Tape& t) {
    const Mat& yv = t.value(out);
    const Mat& go = t.g(out);
    const Eigen::VectorXd dots = (go.array() * yv.array()).rowwise().sum();
    t.g(a).array() +=
        yv.array() * (go.colwise() - dots).array();
  });
}

Var Tape::LayerNormRows(Var a, Var gamma, Var beta, double eps) {
  const Mat& x = value(a);
  const Eigen::Index cols = x.cols();
  const Eigen::VectorXd mean = x.rowwise().mean();
  Mat centered = x.colwise() - mean;
  const Eigen::VectorXd inv_std =
      ((centered.array().square().rowwise().sum() / static_cast<double>(cols)) +
       eps)
          .rsqrt();
  Mat xhat = centered.array().colwise() * inv_std.array();
  Mat result = (xhat.array().rowwise() * value(gamma).row(0).array())
                   .rowwise() +
               value(beta).row(0).array();
  const Var out{static_cast<int>(nodes_.size())};
  return Push(
      std::move(result), needs(a) || needs(gamma) || needs(beta),
      [=, xhat = std::move(xhat)](Tape& t) {
        const Mat& go = t.g(out);
        if (t.needs(gamma)) {
          t.g(gamma) += (go.array() * xhat.array()).colwise().sum().matrix();
        }
        if (t.needs(beta)) t.g(beta) += go.colwise().sum();
        if (t.needs(a)) {
          const Mat gxhat = go.array().rowwise() * t.value(gamma).row(0).array();
          const Eigen::VectorXd mean_g = gxhat.rowwise().mean();
          const Eigen::VectorXd mean_gx =
              (gxhat.array() * xhat.array()).rowwise().mean();
          const Mat inner = (gxhat.colwise() - mean_g).array() -
                            xhat.array().colwise() * mean_gx.array();
          t.g(a).array() += inner.array().colwise() * inv_std.array();
        }
      });
}

Var Tape::SliceCols(Var a, int start, int count) {
  const Var out{static_cast<int>(nodes_.size())};
  return Push(value(a).middleCols(start, count), needs(a), [=](Tape& t) {
    t.g(a).middleCols(start, count) += t.g(out);
  });
}

Var Tape::ConcatCols(const std::vector<Var>& parts) {
  Eigen::Index rows = value(parts.front()).rows();
  Eigen::Index cols = 0;
  bool any = false;
  for (Var p : parts) {
    assert(value(p).rows() == rows);
    cols += value(p).cols();
    any = any || needs(p);
  }
  Mat result(rows, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    result.middleCols(at, value(p).cols()) = value(p);
    at += value(p).cols();
  }
  const Var out{static_cast<int>(nodes_.size())};
  return Push(std::move(result), any, [=](Tape& t) {
    Eigen::Index offset = 0;
    for (Var p : parts) {
      const Eigen::Index c = t.value(p).cols();
      if (t.needs(p)) t.g(p) += t.g(out).middleCols(offset, c);
      offset += c;
    }
  });
}

Var Tape::ConcatRows(const std::vector<Var>& parts) {
  Eigen::Index cols = value(parts.front()).cols();
  Eigen::Index rows = 0;
  bool any = false;
  for (Var p : parts) {
    assert(value(p).cols() == cols);
    rows += value(p).rows();
    any = any || needs(p);
  }
  Mat result(rows, cols);
  Eigen::Index at = 0;
  for (Var p : parts) {
    result.middleRows(at, value(p).rows()) = value(p);
    at += value(p).rows();
  }
  const Var out{static_cast<int>(nodes_.size())};
  return Push(std::move(result), any, [=](Tape& t) {
    Eigen::Index offset = 0;
    for (Var p : parts) {
      const Eigen::Index r = t.value(p).rows();
      if (t.needs(p)) t.g(p) += t.g(out).middleRows(offset, r);
      offset += r;
    }
  });
}

Var Tape::FlattenRow(Var a) {
  const Mat& x = value(a);
  const Eigen::Index rows = x.rows();
  const Eigen::Index cols = x.cols();
  Mat result(1, rows * cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) result(0, r * cols + c) = x(r, c);
  }
  const Var out{static_cast<int>(nodes_.size())};
  return Push(std::move(result), needs(a), [=](Tape& t) {
    const Mat& go = t.g(out);
    Mat& ga = t.g(a);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) ga(r, c) += go(0, r * cols + c);
    }
  });
}

Var Tape::WeightedAbsError(Var a, const Mat& target, const Mat& weights,
                           double factor) {
  const Mat diff = value(a) - target;
  Mat result(1, 1);
  result(0, 0) = factor * (weights.array() * diff.array().abs()).sum();
  const Var out{static_cast<int>(nodes_.size())};
  Mat slope = factor * (weights.array() * diff.array().sign()).matrix();
  return Push(std::move(result), needs(a),
              [=, slope = std::move(slope)](Tape& t) {
                t.g(a) += t.g(out)(0, 0) * slope;
              });
}

void Tape::Backward(Var root) {
  assert(value(root).size() == 1);
  for (Node& node : nodes_) {
    if (node.needs_grad) {
      node.grad = Mat::Zero(node.value.rows(), node.value.cols());
    }
  }
  if (!nodes_[root.index].needs_grad) return;
  nodes_[root.index].grad(0, 0) = 1.0;
  for (int i = root.index; i >= 0; --i) {
    if (nodes_[i].backward) nodes_[i].backward(*this);
  }
}

}  // namespace tsaudit::models::autodiff
