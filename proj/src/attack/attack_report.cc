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

#include "tsaudit/attack/attack_report.h"

#include <map>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/json_fields.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::attack {

absl::StatusOr<AttackReport> RunAttack(const ImputationOracle& target,
                                       const ImputationOracle& reference,
                                       std::span<const TimeSeries> candidates,
                                       const AttackConfig& cfg) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("attack needs at least one candidate");
  }
  std::vector<MembershipScore> scores;
  scores.reserve(candidates.size());
  std::map<std::string, double> by_id;
  for (const TimeSeries& x : candidates) {
    TSAUDIT_ASSIGN_OR_RETURN(MembershipScore s,
                             LbrmScore(target, reference, x, cfg));
    by_id.emplace(x.id(), s.r);
    scores.push_back(std::move(s));
  }

  std::vector<double> nonmember_r;
  if (cfg.theta_rule.kind == ThetaRule::Kind::kStdRule) {
    if (cfg.known_nonmembers.empty()) {
      return absl::FailedPreconditionError(
          "std_rule needs known non-members in the attack config");
    }
    for (const TimeSeries& x : cfg.known_nonmembers) {
      if (auto it = by_id.find(x.id()); it != by_id.end()) {
        nonmember_r.push_back(it->second);
        continue;
      }
      TSAUDIT_ASSIGN_OR_RETURN(MembershipScore s,
                               LbrmScore(target, reference, x, cfg));
      nonmember_r.push_back(s.r);
    }
  }
  return ClassifyScores(std::move(scores), cfg.theta_rule, nonmember_r);
}

absl::StatusOr<AttackReport> ClassifyScores(
    std::vector<MembershipScore> scores, const ThetaRule& rule,
    std::span<const double> nonmember_scores) {
  std::vector<double> r;
  r.reserve(scores.size());
  for (const MembershipScore& s : scores) r.push_back(s.r);
  AttackReport report;
  report.theta_rule = rule;
  TSAUDIT_ASSIGN_OR_RETURN(report.theta,
                           ResolveTheta(rule, r, nonmember_scores));
  report.verdicts.reserve(scores.size());
  for (MembershipScore& s : scores) {
    report.verdicts.push_back(Classify(std::move(s), report.theta));
  }
  return report;
}

nlohmann::json AttackReportToJson(const AttackReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Verdict& v : report.verdicts) {
    rows.push_back({{"id", v.candidate_id},
                    {"l_t", v.score.l_t},
                    {"l_r", v.score.l_r},
                    {"r", v.score.r},
                    {"is_member", v.is_member}});
  }
  nlohmann::json j;
  j["theta"] = report.theta;
  j["theta_rule"] = report.theta_rule.ToString();
  j["per_candidate"] = std::move(rows);
  return j;
}

absl::StatusOr<AttackReport> AttackReportFromJson(const nlohmann::json& j) {
  AttackReport report;
  std::string rule;
  JsonFields fields(j, "attack report");
  fields.Require("theta", report.theta).Require("theta_rule", rule);
  TSAUDIT_RETURN_IF_ERROR(fields.status());
  if (!fields.Has("per_candidate") || !j.at("per_candidate").is_array()) {
    return absl::InvalidArgumentError(
        "attack report needs a per_candidate array");
  }
  TSAUDIT_ASSIGN_OR_RETURN(report.theta_rule, ThetaRule::Parse(rule));
  int index = 0;
  for (const nlohmann::json& row : j.at("per_candidate")) {
    Verdict v;
    JsonFields f(row, absl::StrCat("per_candidate[", index++, "]"));
    f.Require("id", v.candidate_id)
        .Require("l_t", v.score.l_t)
        .Require("l_r", v.score.l_r)
        .Require("r", v.score.r)
        .Require("is_member", v.is_member);
    TSAUDIT_RETURN_IF_ERROR(f.status());
    v.score.candidate_id = v.candidate_id;
    v.score.degenerate =
        v.score.l_t < kRatioEpsilon && v.score.l_r < kRatioEpsilon;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

}  // namespace tsaudit::attack
