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

#ifndef TSAUDIT_MODELS_AUTODIFF_H_
#define TSAUDIT_MODELS_AUTODIFF_H_

#include <functional>
#include <vector>

#include "Eigen/Core"

// A small reverse-mode differentiation tape over dense matrices, sized for
// the desk-scale imputers. Nodes are appended in topological order, so the
// backward sweep is a reverse walk.
namespace tsaudit::models::autodiff {

using Mat = Eigen::MatrixXd;

struct Var {
  int index = -1;
};

class Tape {
 public:
  Var Constant(Mat value);
  Var Parameter(Mat value);

  const Mat& value(Var v) const { return nodes_[v.index].value; }
  const Mat& grad(Var v) const { return nodes_[v.index].grad; }

  Var MatMul(Var a, Var b);
  Var Transpose(Var a);
  Var Add(Var a, Var b);
  // a (r x c) plus a 1 x c row broadcast over rows.
  Var AddRow(Var a, Var row);
  Var Scale(Var a, double factor);
  Var Tanh(Var a);
  // Tanh approximation of GELU.
  Var Gelu(Var a);
  Var SoftmaxRows(Var a);
  // Per-row normalisation followed by the 1 x c affine gamma / beta.
  Var LayerNormRows(Var a, Var gamma, Var beta, double eps = 1e-5);
  Var SliceCols(Var a, int start, int count);
  Var ConcatCols(const std::vector<Var>& parts);
  Var ConcatRows(const std::vector<Var>& parts);
  // Row-major flatten to 1 x (rows * cols).
  Var FlattenRow(Var a);
  // sum(w .* |a - target|) * factor, as a 1 x 1 node.
  Var WeightedAbsError(Var a, const Mat& target, const Mat& weights,
                       double factor);

  // Seeds d(root)/d(root) = 1 for a 1 x 1 root and propagates to every node
  // that depends on a parameter.
  void Backward(Var root);

 private:
  struct Node {
    Mat value;
    Mat grad;
    bool needs_grad = false;
    std::function<void(Tape&)> backward;
  };

  Var Push(Mat value, bool needs_grad, std::function<void(Tape&)> backward);
  bool needs(Var v) const { return nodes_[v.index].needs_grad; }
  Mat& g(Var v) { return nodes_[v.index].grad; }

  std::vector<Node> nodes_;
};

}  // namespace tsaudit::models::autodiff

#endif  // TSAUDIT_MODELS_AUTODIFF_H_
