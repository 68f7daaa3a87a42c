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

#include "tsaudit/attack/calibration.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tsaudit::attack {

absl::StatusOr<double> CalibrateThetaStd(std::span<const double> nonmember_scores,
                                         double n) {
  if (nonmember_scores.size() < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "std rule needs at least 2 non-member scores, got ",
        nonmember_scores.size()));
  }
  const double count = static_cast<double>(nonmember_scores.size());
  double mean = 0.0;
  for (double s : nonmember_scores) mean += s;
  mean /= count;
  double var = 0.0;
  for (double s : nonmember_scores) var += (s - mean) * (s - mean);
  var /= count;
  return mean + n * std::sqrt(var);
}

absl::StatusOr<double> CalibrateThetaTopK(std::span<const double> scores,
                                          double percent) {
  if (!(percent > 0.0 && percent <= 100.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("percent must lie in (0, 100], got ", percent));
  }
  if (scores.empty()) {
    return absl::InvalidArgumentError("top-k rule needs at least one score");
  }
  const std::size_t n = scores.size();
  const std::size_t k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::floor(percent / 100.0 * n)), 1, n);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
  return sorted[k - 1];
}

Verdict Classify(const MembershipScore& score, double theta) {
  return Verdict{score.candidate_id, score.r <= theta, score};
}

absl::StatusOr<double> ResolveTheta(const ThetaRule& rule,
                                    std::span<const double> candidate_scores,
                                    std::span<const double> nonmember_scores) {
  switch (rule.kind) {
    case ThetaRule::Kind::kStdRule:
      return CalibrateThetaStd(nonmember_scores, rule.value);
    case ThetaRule::Kind::kTopPercent:
      return CalibrateThetaTopK(candidate_scores, rule.value);
    case ThetaRule::Kind::kFixed:
      if (!std::isfinite(rule.value)) {
        return absl::InvalidArgumentError("fixed theta must be finite");
      }
      return rule.value;
  }
  return absl::InternalError("unhandled theta rule");
}

}  // namespace tsaudit::attack
