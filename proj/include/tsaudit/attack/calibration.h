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

#ifndef TSAUDIT_ATTACK_CALIBRATION_H_
#define TSAUDIT_ATTACK_CALIBRATION_H_

#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "tsaudit/attack/lbrm.h"

namespace tsaudit::attack {

// theta = mean + n * sigma over scores of known non-members (population
// sigma). Needs at least two scores.
absl::StatusOr<double> CalibrateThetaStd(std::span<const double> nonmember_scores,
                                         double n);

// theta = k-th smallest score with k = max(1, floor(percent / 100 * N)), so
// the k lowest ratios (and anything tied with the k-th) classify as members.
absl::StatusOr<double> CalibrateThetaTopK(std::span<const double> scores,
                                          double percent);

struct Verdict {
  std::string candidate_id;
  bool is_member = false;
  MembershipScore score;
};

// Member iff score.r <= theta.
Verdict Classify(const MembershipScore& score, double theta);

// Applies `rule`: kTopPercent ranks `candidate_scores`, kStdRule uses
// `nonmember_scores`, kFixed returns its value.
absl::StatusOr<double> ResolveTheta(const ThetaRule& rule,
                                    std::span<const double> candidate_scores,
                                    std::span<const double> nonmember_scores);

}  // namespace tsaudit::attack

#endif  // TSAUDIT_ATTACK_CALIBRATION_H_
