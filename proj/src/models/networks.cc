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

#include "tsaudit/models/networks.h"

#include <cassert>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "tsaudit/core/random.h"

namespace tsaudit::models {
namespace {

using autodiff::Mat;
using autodiff::Tape;
using autodiff::Var;
using Init = ParamBlock::Init;

Mat FlattenRowMajor(const SeriesMatrix& m) {
  // SeriesMatrix is row-major, so its storage order is already (t, d).
  return Eigen::Map<const Eigen::RowVectorXd>(m.data(), m.size());
}

// Dense affine layer: x W + b.
Var Dense(Tape& tape, Var x, Var w, Var b) {
  return tape.AddRow(tape.MatMul(x, w), b);
}

class AutoencoderNetwork : public Network {
 public:
  AutoencoderNetwork(const AutoencoderShape& shape, int length, int dims)
      : Network(length, dims) {
    const int io = length * dims;
    const int widths[] = {2 * io,       shape.hidden1, shape.hidden2,
                          shape.code,   shape.hidden2, shape.hidden1,
                          io};
    for (int layer = 0; layer < 6; ++layer) {
      layout_.Add(absl::StrCat("dense", layer, ".w"), widths[layer],
                  widths[layer + 1], Init::kFanIn, widths[layer]);
      layout_.Add(absl::StrCat("dense", layer, ".b"), 1, widths[layer + 1],
                  Init::kZeros);
    }
  }

  Var Forward(Tape& tape, const std::vector<Var>& p,
              std::span<const NetworkInput> inputs) const override {
    const int io = length() * dims();
    Mat x(static_cast<Eigen::Index>(inputs.size()), 2 * io);
    for (std::size_t b = 0; b < inputs.size(); ++b) {
      x.row(b).head(io) = FlattenRowMajor(inputs[b].values);
      x.row(b).tail(io) = FlattenRowMajor(inputs[b].observed);
    }
    Var h = tape.Constant(std::move(x));
    for (int layer = 0; layer < 6; ++layer) {
      h = Dense(tape, h, p[2 * layer], p[2 * layer + 1]);
      // Linear bottleneck (layer 2) and linear output head (layer 5).
      if (layer != 2 && layer != 5) h = tape.Tanh(h);
    }
    return h;
  }
};

class AttentionNetwork : public Network {
 public:
  AttentionNetwork(const AttentionShape& shape, int length, int dims)
      : Network(length, dims), shape_(shape) {
    const int dm = shape.model_dim;
    layout_.Add("embed.w", 2 * dims, dm, Init::kFanIn, 2 * dims);
    layout_.Add("embed.b", 1, dm, Init::kZeros);
    for (int blk = 0; blk < shape.blocks; ++blk) {
      const std::string pre = absl::StrCat("block", blk, ".");
      for (const char* proj : {"q", "k", "v", "o"}) {
        layout_.Add(pre + proj + ".w", dm, dm, Init::kFanIn, dm);
        layout_.Add(pre + proj + ".b", 1, dm, Init::kZeros);
      }
      layout_.Add(pre + "norm1.gamma", 1, dm, Init::kOnes);
      layout_.Add(pre + "norm1.beta", 1, dm, Init::kZeros);
      layout_.Add(pre + "ffn1.w", dm, shape.ffn_dim, Init::kFanIn, dm);
      layout_.Add(pre + "ffn1.b", 1, shape.ffn_dim, Init::kZeros);
      layout_.Add(pre + "ffn2.w", shape.ffn_dim, dm, Init::kFanIn,
                  shape.ffn_dim);
      layout_.Add(pre + "ffn2.b", 1, dm, Init::kZeros);
      layout_.Add(pre + "norm2.gamma", 1, dm, Init::kOnes);
      layout_.Add(pre + "norm2.beta", 1, dm, Init::kZeros);
    }
    layout_.Add("head.w", dm, dims, Init::kFanIn, dm);
    layout_.Add("head.b", 1, dims, Init::kZeros);

    positions_.resize(length, dm);
    for (int t = 0; t < length; ++t) {
      for (int i = 0; i < dm; ++i) {
        const double rate =
            std::pow(10000.0, -static_cast<double>(i - i % 2) / dm);
        positions_(t, i) = (i % 2 == 0) ? std::sin(t * rate)
                                        : std::cos(t * rate);
      }
    }
  }

  Var Forward(Tape& tape, const std::vector<Var>& p,
              std::span<const NetworkInput> inputs) const override {
    std::vector<Var> rows;
    rows.reserve(inputs.size());
    for (const NetworkInput& in : inputs) {
      rows.push_back(tape.FlattenRow(ForwardOne(tape, p, in)));
    }
    return tape.ConcatRows(rows);
  }

 private:
  Var ForwardOne(Tape& tape, const std::vector<Var>& p,
                 const NetworkInput& in) const {
    const int dm = shape_.model_dim;
    const int head_dim = dm / shape_.heads;
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(head_dim));

    Mat features(length(), 2 * dims());
    features << in.values, in.observed;
    std::size_t k = 0;
    Var h = Dense(tape, tape.Constant(std::move(features)), p[k], p[k + 1]);
    k += 2;
    h = tape.Add(h, tape.Constant(positions_));

    for (int blk = 0; blk < shape_.blocks; ++blk) {
      const Var q = Dense(tape, h, p[k], p[k + 1]);
      const Var key = Dense(tape, h, p[k + 2], p[k + 3]);
      const Var v = Dense(tape, h, p[k + 4], p[k + 5]);
      std::vector<Var> heads;
      for (int hd = 0; hd < shape_.heads; ++hd) {
        const int c = hd * head_dim;
        const Var scores = tape.Scale(
            tape.MatMul(tape.SliceCols(q, c, head_dim),
                        tape.Transpose(tape.SliceCols(key, c, head_dim))),
            inv_sqrt);
        heads.push_back(tape.MatMul(tape.SoftmaxRows(scores),
                                    tape.SliceCols(v, c, head_dim)));
      }
      const Var attended = Dense(tape, tape.ConcatCols(heads), p[k + 6],
                                 p[k + 7]);
      h = tape.LayerNormRows(tape.Add(h, attended), p[k + 8], p[k + 9]);
      const Var ffn = Dense(
          tape, tape.Gelu(Dense(tape, h, p[k + 10], p[k + 11])), p[k + 12],
          p[k + 13]);
      h = tape.LayerNormRows(tape.Add(h, ffn), p[k + 14], p[k + 15]);
      k += 16;
    }
    return Dense(tape, h, p[k], p[k + 1]);
  }

  AttentionShape shape_;
  Mat positions_;
};

}  // namespace

void ParameterLayout::Add(std::string name, int rows, int cols,
                          ParamBlock::Init init, int fan_in) {
  blocks_.push_back(ParamBlock{std::move(name), rows, cols, size_, init,
                               fan_in});
  size_ += static_cast<std::size_t>(rows) * cols;
}

std::vector<double> Network::Initialize(std::uint64_t seed) const {
  std::vector<double> flat(layout_.size(), 0.0);
  Rng rng(seed);
  for (const ParamBlock& block : layout_.blocks()) {
    const std::size_t n = static_cast<std::size_t>(block.rows) * block.cols;
    for (std::size_t i = 0; i < n; ++i) {
      double& w = flat[block.offset + i];
      switch (block.init) {
        case Init::kFanIn: {
          const double bound = 1.0 / std::sqrt(static_cast<double>(block.fan_in));
          w = rng.Uniform(-bound, bound);
          break;
        }
        case Init::kZeros:
          w = 0.0;
          break;
        case Init::kOnes:
          w = 1.0;
          break;
      }
    }
  }
  return flat;
}

std::unique_ptr<Network> MakeNetwork(const ImputerConfig& cfg, int length,
                                     int dims) {
  switch (cfg.architecture) {
    case Architecture::kAutoencoder:
      return std::make_unique<AutoencoderNetwork>(cfg.autoencoder, length,
                                                  dims);
    case Architecture::kAttention:
      return std::make_unique<AttentionNetwork>(cfg.attention, length, dims);
  }
  return nullptr;
}

std::vector<Var> LoadParameters(Tape& tape, const ParameterLayout& layout,
                                std::span<const double> flat, bool trainable) {
  assert(flat.size() == layout.size());
  std::vector<Var> vars;
  vars.reserve(layout.blocks().size());
  for (const ParamBlock& block : layout.blocks()) {
    // Flat storage is row-major per block.
    Mat m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic,
                                           Eigen::Dynamic, Eigen::RowMajor>>(
        flat.data() + block.offset, block.rows, block.cols);
    vars.push_back(trainable ? tape.Parameter(std::move(m))
                             : tape.Constant(std::move(m)));
  }
  return vars;
}

double LossAndGradient(const Network& net, std::span<const double> params,
                       std::span<const NetworkInput> inputs,
                       std::span<const SeriesMatrix> targets,
                       std::span<const SeriesMatrix> loss_weights,
                       std::span<double> grad) {
  assert(inputs.size() == targets.size() &&
         inputs.size() == loss_weights.size());
  const int io = net.length() * net.dims();
  Mat target(static_cast<Eigen::Index>(inputs.size()), io);
  Mat weights(static_cast<Eigen::Index>(inputs.size()), io);
  for (std::size_t b = 0; b < inputs.size(); ++b) {
    target.row(b) = FlattenRowMajor(targets[b]);
    weights.row(b) = FlattenRowMajor(loss_weights[b]);
  }
  const double scored = weights.sum();
  if (scored <= 0.0) {
    std::fill(grad.begin(), grad.end(), 0.0);
    return 0.0;
  }

  Tape tape;
  const std::vector<Var> p = LoadParameters(tape, net.layout(), params);
  const Var pred = net.Forward(tape, p, inputs);
  const Var loss = tape.WeightedAbsError(pred, target, weights, 1.0 / scored);
  if (!grad.empty()) {
    assert(grad.size() == params.size());
    tape.Backward(loss);
    const auto& blocks = net.layout().blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const Mat& g = tape.grad(p[i]);
      for (int r = 0; r < blocks[i].rows; ++r) {
        for (int c = 0; c < blocks[i].cols; ++c) {
          grad[blocks[i].offset + r * blocks[i].cols + c] = g(r, c);
        }
      }
    }
  }
  return tape.value(loss)(0, 0);
}

SeriesMatrix Predict(const Network& net, std::span<const double> params,
                     const NetworkInput& input) {
  Tape tape;
  const std::vector<Var> p =
      LoadParameters(tape, net.layout(), params, /*trainable=*/false);
  const Mat& flat =
      tape.value(net.Forward(tape, p, std::span<const NetworkInput>(&input, 1)));
  SeriesMatrix out(net.length(), net.dims());
  for (int t = 0; t < net.length(); ++t) {
    for (int d = 0; d < net.dims(); ++d) out(t, d) = flat(0, t * net.dims() + d);
  }
  return out;
}

}  // namespace tsaudit::models
