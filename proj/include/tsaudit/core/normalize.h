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

#ifndef TSAUDIT_CORE_NORMALIZE_H_
#define TSAUDIT_CORE_NORMALIZE_H_

#include <utility>

#include "Eigen/Core"
#include "tsaudit/core/time_series.h"

namespace tsaudit {

// Per-dimension affine map x -> (x - mean) / scale.
struct NormParams {
  Eigen::RowVectorXd mean;
  Eigen::RowVectorXd scale;
};

// Z-scores every dimension with the population standard deviation. A constant
// dimension maps to zeros and stores scale 1 so the inverse stays exact.
std::pair<TimeSeries, NormParams> ZScoreNormalize(const TimeSeries& x);

TimeSeries Denormalize(const TimeSeries& x, const NormParams& params);

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_NORMALIZE_H_
