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

#ifndef TSAUDIT_MODELS_TRAINING_H_
#define TSAUDIT_MODELS_TRAINING_H_

#include <span>

#include "absl/status/statusor.h"
#include "tsaudit/core/time_series.h"
#include "tsaudit/models/imputer_config.h"
#include "tsaudit/models/trained_imputer.h"

namespace tsaudit::models {

// Mini-batch gradient descent with momentum on the masked-reconstruction MAE.
// Every sample of every batch gets a fresh random mask hiding
// cfg.train_mask_fraction of its entries; only those entries are scored.
// Bitwise deterministic for a given (dataset, cfg). A non-finite loss or
// gradient aborts with an Internal error that names the epoch.
absl::StatusOr<TrainedImputer> Train(std::span<const TimeSeries> dataset,
                                     const ImputerConfig& cfg);

// Continues descent from `base`'s parameters on `private_set` only, with the
// optimisation settings of `cfg` (epochs, batch size, rate, momentum, mask
// fraction, seed). Architecture and sizes must match `base`. `base` is left
// untouched.
absl::StatusOr<TrainedImputer> FineTune(const TrainedImputer& base,
                                        std::span<const TimeSeries> private_set,
                                        const ImputerConfig& cfg);

}  // namespace tsaudit::models

#endif  // TSAUDIT_MODELS_TRAINING_H_
