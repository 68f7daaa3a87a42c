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

#include "tsaudit/models/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/mask.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::models {
namespace {

absl::Status CheckDataset(std::span<const TimeSeries> dataset, int length,
                          int dims) {
  if (dataset.empty()) {
    return absl::InvalidArgumentError("training set is empty");
  }
  for (const TimeSeries& x : dataset) {
    if (x.length() != length || x.dims() != dims) {
      return absl::InvalidArgumentError(absl::StrCat(
          "series '", x.id(), "' is ", x.length(), "x", x.dims(),
          " but the model expects ", length, "x", dims));
    }
  }
  return absl::OkStatus();
}

bool ShapesMatch(const ImputerConfig& a, const ImputerConfig& b) {
  if (a.architecture != b.architecture) return false;
  if (a.architecture == Architecture::kAutoencoder) {
    return a.autoencoder.hidden1 == b.autoencoder.hidden1 &&
           a.autoencoder.hidden2 == b.autoencoder.hidden2 &&
           a.autoencoder.code == b.autoencoder.code;
  }
  return a.attention.model_dim == b.attention.model_dim &&
         a.attention.heads == b.attention.heads &&
         a.attention.ffn_dim == b.attention.ffn_dim &&
         a.attention.blocks == b.attention.blocks;
}

struct DescentResult {
  std::vector<double> params;
  std::vector<double> history;
};

absl::StatusOr<DescentResult> Descend(const Network& net,
                                            std::span<const TimeSeries> dataset,
                                            const ImputerConfig& cfg,
                                            std::vector<double> params) {
  const int length = net.length();
  const int dims = net.dims();
  Rng rng(DeriveSeed(cfg.seed, "descent"));
  std::vector<double> velocity(params.size(), 0.0);
  std::vector<double> grad(params.size(), 0.0);
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> history;
  history.reserve(cfg.epochs);

  std::vector<NetworkInput> inputs;
  std::vector<SeriesMatrix> targets;
  std::vector<SeriesMatrix> weights;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.UniformIndex(i)]);
    }
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop = std::min(
          order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      inputs.clear();
      targets.clear();
      weights.clear();
      for (std::size_t i = start; i < stop; ++i) {
        const TimeSeries& x = dataset[order[i]];
        TSAUDIT_ASSIGN_OR_RETURN(
            MaskMatrix mask,
            RandomMissingMask(length, dims, cfg.train_mask_fraction,
                              rng.NextBits()));
        SeriesMatrix observed = mask.AsWeights();
        SeriesMatrix shown = x.values().cwiseProduct(observed);
        weights.push_back(SeriesMatrix::Ones(length, dims) - observed);
        inputs.push_back(NetworkInput{std::move(shown), std::move(observed)});
        targets.push_back(x.values());
      }
      const double loss =
          LossAndGradient(net, params, inputs, targets, weights, grad);
      const bool finite =
          std::isfinite(loss) &&
          std::all_of(grad.begin(), grad.end(),
                      [](double g) { return std::isfinite(g); });
      if (!finite) {
        return absl::InternalError(absl::StrCat(
            "training diverged at epoch ", epoch,
            ": non-finite loss or gradient"));
      }
      for (std::size_t k = 0; k < params.size(); ++k) {
        velocity[k] = cfg.momentum * velocity[k] - cfg.learning_rate * grad[k];
        params[k] += velocity[k];
      }
      loss_sum += loss;
      ++batches;
    }
    const double mean_loss = loss_sum / batches;
    if (!std::isfinite(mean_loss)) {
      return absl::InternalError(
          absl::StrCat("training diverged at epoch ", epoch));
    }
    history.push_back(mean_loss);
  }
  if (!std::all_of(params.begin(), params.end(),
                   [](double w) { return std::isfinite(w); })) {
    return absl::InternalError(absl::StrCat(
        "training diverged at epoch ", cfg.epochs, ": non-finite parameters"));
  }
  return DescentResult{std::move(params), std::move(history)};
}

}  // namespace

absl::StatusOr<TrainedImputer> Train(std::span<const TimeSeries> dataset,
                                     const ImputerConfig& cfg) {
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  if (dataset.empty()) {
    return absl::InvalidArgumentError("training set is empty");
  }
  const int length = dataset.front().length();
  const int dims = dataset.front().dims();
  TSAUDIT_RETURN_IF_ERROR(CheckDataset(dataset, length, dims));
  const std::unique_ptr<Network> net = MakeNetwork(cfg, length, dims);
  TSAUDIT_ASSIGN_OR_RETURN(
      DescentResult fit,
      Descend(*net, dataset, cfg, net->Initialize(DeriveSeed(cfg.seed, "init"))));
  return TrainedImputer::Create(cfg, length, dims, std::move(fit.params),
                                std::move(fit.history));
}

absl::StatusOr<TrainedImputer> FineTune(const TrainedImputer& base,
                                        std::span<const TimeSeries> private_set,
                                        const ImputerConfig& cfg) {
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  if (!ShapesMatch(base.config(), cfg)) {
    return absl::InvalidArgumentError(
        "fine-tuning config must keep the base model's architecture and sizes");
  }
  TSAUDIT_RETURN_IF_ERROR(
      CheckDataset(private_set, base.length(), base.dims()));
  std::vector<double> start(base.parameters().begin(),
                            base.parameters().end());
  TSAUDIT_ASSIGN_OR_RETURN(
      DescentResult fit,
      Descend(base.network(), private_set, cfg, std::move(start)));
  return TrainedImputer::Create(cfg, base.length(), base.dims(),
                                std::move(fit.params), std::move(fit.history));
}

}  // namespace tsaudit::models
