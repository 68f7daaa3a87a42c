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

#include "tsaudit/models/trained_imputer.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tsaudit::models {

absl::StatusOr<TrainedImputer> TrainedImputer::Create(
    ImputerConfig cfg, int length, int dims, std::vector<double> parameters,
    std::vector<double> history) {
  if (absl::Status s = Validate(cfg); !s.ok()) return s;
  if (length < 1 || dims < 1) {
    return absl::InvalidArgumentError("imputer window must be at least 1x1");
  }
  std::shared_ptr<const Network> net = MakeNetwork(cfg, length, dims);
  if (parameters.size() != net->layout().size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected ", net->layout().size(), " parameters for this ",
        ArchitectureName(cfg.architecture), ", got ", parameters.size()));
  }
  if (!std::all_of(parameters.begin(), parameters.end(),
                   [](double w) { return std::isfinite(w); })) {
    return absl::InvalidArgumentError("imputer parameters must be finite");
  }
  return TrainedImputer(std::move(cfg), std::move(net), std::move(parameters),
                        std::move(history));
}

absl::StatusOr<TimeSeries> TrainedImputer::Impute(const MaskedSeries& x) const {
  const TimeSeries& shown = x.series();
  if (shown.length() != length() || shown.dims() != dims()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "imputer expects ", length(), "x", dims(), " windows, got ",
        shown.length(), "x", shown.dims()));
  }
  const NetworkInput input{shown.values(), x.mask().AsWeights()};
  return KeepObserved(x, Predict(*net_, parameters_, input));
}

}  // namespace tsaudit::models
