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

#ifndef TSAUDIT_MODELS_EVALUATION_H_
#define TSAUDIT_MODELS_EVALUATION_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "tsaudit/core/imputation_oracle.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit::models {

// Hides `fraction` of every series (seeded per series index), imputes, and
// returns the mean absolute error over the hidden entries of all series.
absl::StatusOr<double> EvaluateMae(const ImputationOracle& model,
                                   std::span<const TimeSeries> data,
                                   double fraction, std::uint64_t seed);

struct ParityReport {
  double mae_target = 0.0;
  double mae_reference = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

inline constexpr double kParityMaskFraction = 0.2;

// Both models are scored on identical masks; passes when
// |MAE_target - MAE_reference| <= tolerance.
absl::StatusOr<ParityReport> ParityCheck(const ImputationOracle& target,
                                         const ImputationOracle& reference,
                                         std::span<const TimeSeries> test,
                                         double tolerance,
                                         std::uint64_t seed = 0);

}  // namespace tsaudit::models

#endif  // TSAUDIT_MODELS_EVALUATION_H_
