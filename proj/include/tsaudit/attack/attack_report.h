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

#ifndef TSAUDIT_ATTACK_ATTACK_REPORT_H_
#define TSAUDIT_ATTACK_ATTACK_REPORT_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/attack/calibration.h"
#include "tsaudit/attack/lbrm.h"
#include "tsaudit/core/imputation_oracle.h"

namespace tsaudit::attack {

struct AttackReport {
  double theta = 0.0;
  ThetaRule theta_rule;
  // One entry per candidate, in input order.
  std::vector<Verdict> verdicts;
};

// Scores every candidate, resolves theta with cfg.theta_rule, and classifies.
// Known non-members that also appear among the candidates (same id) reuse
// the candidate's score instead of being queried again. Any error aborts the
// whole run.
absl::StatusOr<AttackReport> RunAttack(const ImputationOracle& target,
                                       const ImputationOracle& reference,
                                       std::span<const TimeSeries> candidates,
                                       const AttackConfig& cfg);

// Theta resolution and classification over already computed scores.
absl::StatusOr<AttackReport> ClassifyScores(
    std::vector<MembershipScore> scores, const ThetaRule& rule,
    std::span<const double> nonmember_scores);

// {theta, theta_rule, per_candidate: [{id, l_t, l_r, r, is_member}]}
nlohmann::json AttackReportToJson(const AttackReport& report);
absl::StatusOr<AttackReport> AttackReportFromJson(const nlohmann::json& j);

}  // namespace tsaudit::attack

#endif  // TSAUDIT_ATTACK_ATTACK_REPORT_H_
