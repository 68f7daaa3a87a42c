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

#ifndef TSAUDIT_MODELS_TRAINED_IMPUTER_H_
#define TSAUDIT_MODELS_TRAINED_IMPUTER_H_

#include <memory>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "tsaudit/core/imputation_oracle.h"
#include "tsaudit/models/imputer_config.h"
#include "tsaudit/models/networks.h"

namespace tsaudit::models {

// A fitted imputer for fixed-shape (T x D) windows. Immutable and cheap to
// copy; Impute is safe to call concurrently.
class TrainedImputer : public ImputationOracle {
 public:
  static absl::StatusOr<TrainedImputer> Create(ImputerConfig cfg, int length,
                                               int dims,
                                               std::vector<double> parameters,
                                               std::vector<double> history);

  // Observed entries are copied from the query; missing ones come from the
  // network.
  absl::StatusOr<TimeSeries> Impute(const MaskedSeries& x) const override;

  const ImputerConfig& config() const { return cfg_; }
  int length() const { return net_->length(); }
  int dims() const { return net_->dims(); }
  const Network& network() const { return *net_; }
  std::span<const double> parameters() const { return parameters_; }
  // Mean training loss per epoch, oldest first.
  std::span<const double> history() const { return history_; }

 private:
  TrainedImputer(ImputerConfig cfg, std::shared_ptr<const Network> net,
                 std::vector<double> parameters, std::vector<double> history)
      : cfg_(std::move(cfg)),
        net_(std::move(net)),
        parameters_(std::move(parameters)),
        history_(std::move(history)) {}

  ImputerConfig cfg_;
  std::shared_ptr<const Network> net_;
  std::vector<double> parameters_;
  std::vector<double> history_;
};

}  // namespace tsaudit::models

#endif  // TSAUDIT_MODELS_TRAINED_IMPUTER_H_
