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

#ifndef TSAUDIT_HARNESS_REPORT_IO_H_
#define TSAUDIT_HARNESS_REPORT_IO_H_

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/attack/attack_report.h"
#include "tsaudit/metrics/roc.h"

namespace tsaudit::harness {

// Ground-truth membership by candidate id.
using Labels = std::map<std::string, bool>;

// Header `id,is_member`; is_member is 0/1 or false/true.
absl::StatusOr<Labels> ParseLabelsCsv(std::istream& in);
absl::StatusOr<Labels> LoadLabels(const std::string& path);
std::string FormatLabelsCsv(const std::vector<std::pair<std::string, bool>>& rows);

// Threshold-free evaluation of both methods from one score record: LBRM
// ranks by r, the naive baseline by l_t. Every candidate needs a label.
struct MethodMetrics {
  metrics::RocCurve lbrm_curve;
  metrics::RocCurve naive_curve;
  metrics::Summary lbrm;
  metrics::Summary naive;
};

absl::StatusOr<MethodMetrics> ComputeMethodMetrics(
    const attack::AttackReport& report, const Labels& labels);

// Subset of {auroc, tpr_at_0_1, tpr_at_top25} selected by `names`.
nlohmann::json MetricsBlock(const metrics::Summary& summary,
                            const std::vector<std::string>& names);

}  // namespace tsaudit::harness

#endif  // TSAUDIT_HARNESS_REPORT_IO_H_
