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

#ifndef TSAUDIT_METRICS_ROC_H_
#define TSAUDIT_METRICS_ROC_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"

namespace tsaudit::metrics {

// Which end of the score axis indicates membership. Loss ratios and raw
// losses are lower-is-member.
enum class Direction { kLowerIsMember, kHigherIsMember };

struct LabeledScore {
  double score = 0.0;
  bool is_member = false;
};

struct LabeledScores {
  std::vector<LabeledScore> items;
  Direction direction = Direction::kLowerIsMember;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  // Scores at or beyond this value (in the member direction) are flagged.
  double threshold = 0.0;
};

// Starts at (0, 0) with an infinite threshold and ends at (1, 1); one point
// per distinct score, so ties collapse.
struct RocCurve {
  std::vector<RocPoint> points;
};

// Fails unless both classes are present.
absl::StatusOr<RocCurve> BuildRocCurve(const LabeledScores& data);

// Trapezoidal area. Equals P(member more member-like than non-member) plus
// half the tie probability.
double Auroc(const RocCurve& curve);

// Highest TPR over curve points with fpr <= fpr_cap. No interpolation.
double TprAtFpr(const RocCurve& curve, double fpr_cap);

// Flags the floor(percent / 100 * N) most member-like scores (at least one,
// ties at the cut included) and returns the fraction of all members flagged.
absl::StatusOr<double> TprAtTopPercent(const LabeledScores& data,
                                       double percent);

// fpr,tpr,threshold rows with a header line.
std::string RocToCsv(const RocCurve& curve);

struct Summary {
  double auroc = 0.0;
  double tpr_at_0_1 = 0.0;
  double tpr_at_top25 = 0.0;
};

inline constexpr double kHeadlineFpr = 0.1;
inline constexpr double kHeadlineTopPercent = 25.0;

absl::StatusOr<Summary> Summarize(const LabeledScores& data);
// {auroc, tpr_at_0_1, tpr_at_top25}
nlohmann::json SummaryToJson(const Summary& summary);

}  // namespace tsaudit::metrics

#endif  // TSAUDIT_METRICS_ROC_H_
