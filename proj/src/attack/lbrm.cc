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

#include "tsaudit/attack/lbrm.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"
#include "tsaudit/dtw/dtw.h"

namespace tsaudit::attack {
namespace {

absl::Status WithCandidate(const absl::Status& s, const std::string& id) {
  return absl::Status(s.code(),
                      absl::StrCat("candidate '", id, "': ", s.message()));
}

// Mean DTW loss of one oracle over the scheduled placements.
absl::StatusOr<double> MeanLoss(const ImputationOracle& oracle,
                                const TimeSeries& x,
                                const std::vector<MaskSpec>& schedule) {
  double total = 0.0;
  for (const MaskSpec& spec : schedule) {
    TSAUDIT_ASSIGN_OR_RETURN(MaskedSeries query, SingleUnitMask(x, spec));
    auto completed = oracle.Impute(query);
    if (!completed.ok()) return WithCandidate(completed.status(), x.id());
    auto cost = dtw::DtwDistance(*completed, x);
    if (!cost.ok()) return WithCandidate(cost.status(), x.id());
    total += cost->value;
  }
  return total / static_cast<double>(schedule.size());
}

// Shortest text that parses back to the same double.
std::string Shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

std::string ThetaRule::ToString() const {
  switch (kind) {
    case Kind::kStdRule:
      return absl::StrCat("std_rule(", Shortest(value), ")");
    case Kind::kTopPercent:
      return absl::StrCat("top_percent(", Shortest(value), ")");
    case Kind::kFixed:
      return absl::StrCat("fixed(", Shortest(value), ")");
  }
  return "unknown";
}

absl::StatusOr<ThetaRule> ThetaRule::Parse(absl::string_view text) {
  const auto bad = [&] {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot parse theta rule '", text,
        "' (expected std_rule(n), top_percent(p) or fixed(theta))"));
  };
  absl::string_view rest = text;
  Kind kind;
  if (absl::ConsumePrefix(&rest, "std_rule(")) {
    kind = Kind::kStdRule;
  } else if (absl::ConsumePrefix(&rest, "top_percent(")) {
    kind = Kind::kTopPercent;
  } else if (absl::ConsumePrefix(&rest, "fixed(")) {
    kind = Kind::kFixed;
  } else {
    return bad();
  }
  if (!absl::ConsumeSuffix(&rest, ")")) return bad();
  double value = 0.0;
  if (!absl::SimpleAtod(rest, &value) || !std::isfinite(value)) return bad();
  if (kind == Kind::kTopPercent && !(value > 0.0 && value <= 100.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("top_percent must lie in (0, 100], got ", value));
  }
  return ThetaRule{kind, value};
}

MembershipScore ScoreFromLosses(std::string candidate_id, double l_t,
                                double l_r) {
  MembershipScore score;
  score.candidate_id = std::move(candidate_id);
  score.l_t = l_t;
  score.l_r = l_r;
  if (l_t < kRatioEpsilon && l_r < kRatioEpsilon) {
    score.r = 1.0;
    score.degenerate = true;
  } else {
    score.r = l_t / std::max(l_r, kRatioEpsilon);
  }
  return score;
}

absl::StatusOr<std::vector<MaskSpec>> MaskSchedule(int length, int dims,
                                                   const AttackConfig& cfg) {
  if (cfg.repeats < 1) {
    return absl::InvalidArgumentError("repeats must be >= 1");
  }
  const int block = cfg.mask_spec.length;
  if (block < 1 || block >= length) {
    return absl::FailedPreconditionError(absl::StrCat(
        "mask block length ", block, " is invalid for series of length ",
        length));
  }
  if (cfg.mask_spec.dim < 0 || cfg.mask_spec.dim >= dims) {
    return absl::OutOfRangeError(absl::StrCat(
        "mask dimension ", cfg.mask_spec.dim, " is outside [0, ", dims, ")"));
  }
  const int positions = length - block + 1;
  const double stride = static_cast<double>(positions) / cfg.repeats;
  Rng rng(DeriveSeed(cfg.seed, "mask-schedule"));
  const double phase = rng.Uniform() * stride;
  std::vector<MaskSpec> schedule;
  schedule.reserve(cfg.repeats);
  for (int k = 0; k < cfg.repeats; ++k) {
    const int start = std::min(
        positions - 1, static_cast<int>(std::floor(phase + k * stride)));
    schedule.push_back(MaskSpec{start, block, cfg.mask_spec.dim});
  }
  return schedule;
}

absl::StatusOr<MembershipScore> LbrmScore(const ImputationOracle& target,
                                          const ImputationOracle& reference,
                                          const TimeSeries& x,
                                          const AttackConfig& cfg) {
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<MaskSpec> schedule,
                           MaskSchedule(x.length(), x.dims(), cfg));
  TSAUDIT_ASSIGN_OR_RETURN(double l_t, MeanLoss(target, x, schedule));
  TSAUDIT_ASSIGN_OR_RETURN(double l_r, MeanLoss(reference, x, schedule));
  return ScoreFromLosses(x.id(), l_t, l_r);
}

absl::StatusOr<double> NaiveLossScore(const ImputationOracle& target,
                                      const TimeSeries& x,
                                      const AttackConfig& cfg) {
  TSAUDIT_ASSIGN_OR_RETURN(std::vector<MaskSpec> schedule,
                           MaskSchedule(x.length(), x.dims(), cfg));
  return MeanLoss(target, x, schedule);
}

}  // namespace tsaudit::attack
