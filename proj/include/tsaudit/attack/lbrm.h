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

#ifndef TSAUDIT_ATTACK_LBRM_H_
#define TSAUDIT_ATTACK_LBRM_H_

#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"
#include <vector>

#include "absl/status/statusor.h"
#include "tsaudit/core/imputation_oracle.h"
#include "tsaudit/core/mask.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit::attack {

// Floor on the reference loss when forming the ratio.
inline constexpr double kRatioEpsilon = 1e-12;

// How the decision threshold on the loss ratio is chosen.
struct ThetaRule {
  enum class Kind { kStdRule, kTopPercent, kFixed };

  Kind kind = Kind::kTopPercent;
  // n for kStdRule, percent for kTopPercent, theta itself for kFixed.
  double value = 25.0;

  static ThetaRule StdRule(double n) { return {Kind::kStdRule, n}; }
  static ThetaRule TopPercent(double percent) {
    return {Kind::kTopPercent, percent};
  }
  static ThetaRule Fixed(double theta) { return {Kind::kFixed, theta}; }

  // "std_rule(2)", "top_percent(25)", "fixed(1)".
  std::string ToString() const;
  static absl::StatusOr<ThetaRule> Parse(absl::string_view text);
};

struct AttackConfig {
  // Block length and dimension of every hidden unit. `start` is ignored: the
  // placements come from MaskSchedule.
  MaskSpec mask_spec;
  // Placements averaged per candidate. 1 reproduces the single-mask rule.
  int repeats = 4;
  ThetaRule theta_rule;
  std::uint64_t seed = 0;
  // Series the auditor knows were not trained on; required by kStdRule.
  std::vector<TimeSeries> known_nonmembers;
};

// Loss record for one candidate. r = l_t / max(l_r, kRatioEpsilon), except
// that r = 1 and `degenerate` is set when both losses are below epsilon.
struct MembershipScore {
  std::string candidate_id;
  double l_t = 0.0;
  double l_r = 0.0;
  double r = 1.0;
  bool degenerate = false;
};

MembershipScore ScoreFromLosses(std::string candidate_id, double l_t,
                                double l_r);

// `repeats` evenly spaced block starts over the T - L + 1 legal positions,
// shifted by a seeded phase. Depends only on (T, D, cfg), so every candidate
// of a given shape is probed at the same places.
absl::StatusOr<std::vector<MaskSpec>> MaskSchedule(int length, int dims,
                                                   const AttackConfig& cfg);

// Masks x at each scheduled placement, queries both oracles, and averages
// the DTW losses of the completions against x.
absl::StatusOr<MembershipScore> LbrmScore(const ImputationOracle& target,
                                          const ImputationOracle& reference,
                                          const TimeSeries& x,
                                          const AttackConfig& cfg);

// The target half of LbrmScore on the same placements: equals
// LbrmScore(...).l_t exactly.
absl::StatusOr<double> NaiveLossScore(const ImputationOracle& target,
                                      const TimeSeries& x,
                                      const AttackConfig& cfg);

}  // namespace tsaudit::attack

#endif  // TSAUDIT_ATTACK_LBRM_H_
