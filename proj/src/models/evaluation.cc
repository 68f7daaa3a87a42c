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

#include "tsaudit/models/evaluation.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/mask.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::models {

absl::StatusOr<double> EvaluateMae(const ImputationOracle& model,
                                   std::span<const TimeSeries> data,
                                   double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("MAE mask fraction must lie in (0, 1), got ", fraction));
  }
  double abs_sum = 0.0;
  long long hidden = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const TimeSeries& x = data[i];
    TSAUDIT_ASSIGN_OR_RETURN(
        MaskMatrix mask,
        RandomMissingMask(x.length(), x.dims(), fraction, DeriveSeed(seed, i)));
    TSAUDIT_ASSIGN_OR_RETURN(MaskedSeries query, ApplyMask(x, mask));
    TSAUDIT_ASSIGN_OR_RETURN(TimeSeries out, model.Impute(query));
    for (int t = 0; t < x.length(); ++t) {
      for (int d = 0; d < x.dims(); ++d) {
        if (mask.observed(t, d)) continue;
        abs_sum += std::abs(out.at(t, d) - x.at(t, d));
        ++hidden;
      }
    }
  }
  if (hidden == 0) return 0.0;
  return abs_sum / static_cast<double>(hidden);
}

absl::StatusOr<ParityReport> ParityCheck(const ImputationOracle& target,
                                         const ImputationOracle& reference,
                                         std::span<const TimeSeries> test,
                                         double tolerance,
                                         std::uint64_t seed) {
  if (!(tolerance > 0.0)) {
    return absl::InvalidArgumentError("parity tolerance must be positive");
  }
  ParityReport report;
  report.tolerance = tolerance;
  TSAUDIT_ASSIGN_OR_RETURN(report.mae_target,
                           EvaluateMae(target, test, kParityMaskFraction, seed));
  TSAUDIT_ASSIGN_OR_RETURN(
      report.mae_reference,
      EvaluateMae(reference, test, kParityMaskFraction, seed));
  report.gap = std::abs(report.mae_target - report.mae_reference);
  report.passed = report.gap <= tolerance;
  return report;
}

}  // namespace tsaudit::models
