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

#ifndef TSAUDIT_MODELS_NETWORKS_H_
#define TSAUDIT_MODELS_NETWORKS_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tsaudit/core/time_series.h"
#include "tsaudit/models/autodiff.h"
#include "tsaudit/models/imputer_config.h"

namespace tsaudit::models {

// Where one weight matrix lives inside the flat parameter vector.
struct ParamBlock {
  enum class Init { kFanIn, kZeros, kOnes };

  std::string name;
  int rows = 0;
  int cols = 0;
  std::size_t offset = 0;
  Init init = Init::kFanIn;
  int fan_in = 1;
};

class ParameterLayout {
 public:
  void Add(std::string name, int rows, int cols, ParamBlock::Init init,
           int fan_in = 1);
  const std::vector<ParamBlock>& blocks() const { return blocks_; }
  std::size_t size() const { return size_; }

 private:
  std::vector<ParamBlock> blocks_;
  std::size_t size_ = 0;
};

// Network-side view of a query: missing entries already hold the fill value.
struct NetworkInput {
  SeriesMatrix values;
  SeriesMatrix observed;  // 1.0 observed, 0.0 missing
};

class Network {
 public:
  Network(int length, int dims) : length_(length), dims_(dims) {}
  virtual ~Network() = default;

  int length() const { return length_; }
  int dims() const { return dims_; }
  const ParameterLayout& layout() const { return layout_; }

  // Weights uniform in +-1/sqrt(fan_in), biases 0, norm gains 1.
  std::vector<double> Initialize(std::uint64_t seed) const;

  // Returns a B x (T*D) node whose row b is the row-major flattened
  // prediction for inputs[b].
  virtual autodiff::Var Forward(autodiff::Tape& tape,
                                const std::vector<autodiff::Var>& params,
                                std::span<const NetworkInput> inputs) const = 0;

 protected:
  ParameterLayout layout_;

 private:
  int length_;
  int dims_;
};

std::unique_ptr<Network> MakeNetwork(const ImputerConfig& cfg, int length,
                                     int dims);

// One tape node per block. Inference passes trainable = false to skip
// recording backward closures.
std::vector<autodiff::Var> LoadParameters(autodiff::Tape& tape,
                                          const ParameterLayout& layout,
                                          std::span<const double> flat,
                                          bool trainable = true);

// Mean absolute error over the entries selected by `loss_weights` (1 = scored)
// averaged over the whole batch. Writes d(loss)/d(params) into `grad` when it
// is non-empty.
double LossAndGradient(const Network& net, std::span<const double> params,
                       std::span<const NetworkInput> inputs,
                       std::span<const SeriesMatrix> targets,
                       std::span<const SeriesMatrix> loss_weights,
                       std::span<double> grad);

// Raw network output (no keep-observed merge) for one query.
SeriesMatrix Predict(const Network& net, std::span<const double> params,
                     const NetworkInput& input);

}  // namespace tsaudit::models

#endif  // TSAUDIT_MODELS_NETWORKS_H_
