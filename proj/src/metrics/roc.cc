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

#include "tsaudit/metrics/roc.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::metrics {
namespace {

struct Counts {
  long long members = 0;
  long long nonmembers = 0;
};

Counts CountLabels(const LabeledScores& data) {
  Counts c;
  for (const LabeledScore& s : data.items) {
    (s.is_member ? c.members : c.nonmembers) += 1;
  }
  return c;
}

// Maps scores so that smaller always means more member-like.
double Key(const LabeledScores& data, double score) {
  return data.direction == Direction::kLowerIsMember ? score : -score;
}

std::vector<LabeledScore> SortedByKey(const LabeledScores& data) {
  std::vector<LabeledScore> items = data.items;
  std::stable_sort(items.begin(), items.end(),
                   [&](const LabeledScore& a, const LabeledScore& b) {
                     return Key(data, a.score) < Key(data, b.score);
                   });
  return items;
}

}  // namespace

absl::StatusOr<RocCurve> BuildRocCurve(const LabeledScores& data) {
  const Counts counts = CountLabels(data);
  if (counts.members == 0 || counts.nonmembers == 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "ROC needs both classes, got ", counts.members, " members and ",
        counts.nonmembers, " non-members"));
  }
  const std::vector<LabeledScore> items = SortedByKey(data);
  RocCurve curve;
  const double start = data.direction == Direction::kLowerIsMember
                           ? -std::numeric_limits<double>::infinity()
                           : std::numeric_limits<double>::infinity();
  curve.points.push_back({0.0, 0.0, start});
  long long tp = 0;
  long long fp = 0;
  std::size_t i = 0;
  while (i < items.size()) {
    const double key = Key(data, items[i].score);
    while (i < items.size() && Key(data, items[i].score) == key) {
      (items[i].is_member ? tp : fp) += 1;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / counts.nonmembers,
                            static_cast<double>(tp) / counts.members,
                            items[i - 1].score});
  }
  return curve;
}

double Auroc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const RocPoint& a = curve.points[i - 1];
    const RocPoint& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) * 0.5;
  }
  return area;
}

double TprAtFpr(const RocCurve& curve, double fpr_cap) {
  double best = 0.0;
  for (const RocPoint& p : curve.points) {
    if (p.fpr <= fpr_cap) best = std::max(best, p.tpr);
  }
  return best;
}

absl::StatusOr<double> TprAtTopPercent(const LabeledScores& data,
                                       double percent) {
  if (!(percent > 0.0 && percent <= 100.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("percent must lie in (0, 100], got ", percent));
  }
  const Counts counts = CountLabels(data);
  if (counts.members == 0) {
    return absl::InvalidArgumentError("TPR needs at least one member");
  }
  const std::vector<LabeledScore> items = SortedByKey(data);
  const std::size_t n = items.size();
  const std::size_t k = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::floor(percent / 100.0 * n)), 1, n);
  const double cut = Key(data, items[k - 1].score);
  long long flagged_members = 0;
  for (const LabeledScore& s : items) {
    if (Key(data, s.score) > cut) break;
    if (s.is_member) ++flagged_members;
  }
  return static_cast<double>(flagged_members) / counts.members;
}

std::string RocToCsv(const RocCurve& curve) {
  std::string out = "fpr,tpr,threshold\n";
  for (const RocPoint& p : curve.points) {
    absl::StrAppendFormat(&out, "%.17g,%.17g,%.17g\n", p.fpr, p.tpr,
                          p.threshold);
  }
  return out;
}

absl::StatusOr<Summary> Summarize(const LabeledScores& data) {
  TSAUDIT_ASSIGN_OR_RETURN(RocCurve curve, BuildRocCurve(data));
  Summary s;
  s.auroc = Auroc(curve);
  s.tpr_at_0_1 = TprAtFpr(curve, kHeadlineFpr);
  TSAUDIT_ASSIGN_OR_RETURN(s.tpr_at_top25,
                           TprAtTopPercent(data, kHeadlineTopPercent));
  return s;
}

nlohmann::json SummaryToJson(const Summary& summary) {
  return {{"auroc", summary.auroc},
          {"tpr_at_0_1", summary.tpr_at_0_1},
          {"tpr_at_top25", summary.tpr_at_top25}};
}

}  // namespace tsaudit::metrics
