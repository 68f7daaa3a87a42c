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

#include "tsaudit/core/time_series.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tsaudit {

absl::StatusOr<TimeSeries> TimeSeries::Create(std::string id,
                                              SeriesMatrix values) {
  if (values.rows() < 1 || values.cols() < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("series '", id, "' must have T >= 1 and D >= 1, got ",
                     values.rows(), "x", values.cols()));
  }
  if (!values.allFinite()) {
    return absl::InvalidArgumentError(
        absl::StrCat("series '", id, "' contains non-finite values"));
  }
  return TimeSeries(std::move(id), std::move(values));
}

absl::StatusOr<TimeSeries> TimeSeries::WithValues(SeriesMatrix values) const {
  return Create(id_, std::move(values));
}

}  // namespace tsaudit
