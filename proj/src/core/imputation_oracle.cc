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

#include "tsaudit/core/imputation_oracle.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tsaudit {

absl::StatusOr<TimeSeries> KeepObserved(const MaskedSeries& x,
                                        const SeriesMatrix& prediction) {
  const TimeSeries& shown = x.series();
  if (prediction.rows() != shown.length() ||
      prediction.cols() != shown.dims()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prediction shape ", prediction.rows(), "x", prediction.cols(),
        " does not match series shape ", shown.length(), "x", shown.dims()));
  }
  SeriesMatrix merged = prediction;
  for (int t = 0; t < shown.length(); ++t) {
    for (int d = 0; d < shown.dims(); ++d) {
      if (x.mask().observed(t, d)) merged(t, d) = shown.at(t, d);
    }
  }
  return shown.WithValues(std::move(merged));
}

}  // namespace tsaudit
