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

#include "tsaudit/harness/report_io.h"

#include <fstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::harness {

absl::StatusOr<Labels> ParseLabelsCsv(std::istream& in) {
  std::string line;
  long long line_no = 1;
  if (!std::getline(in, line) ||
      absl::StripSuffix(line, "\r") != "id,is_member") {
    return absl::InvalidArgumentError(
        "labels CSV must start with header 'id,is_member'");
  }
  Labels labels;
  while (std::getline(in, line)) {
    ++line_no;
    const absl::string_view row = absl::StripSuffix(line, "\r");
    if (row.empty()) continue;
    const std::vector<absl::string_view> fields = absl::StrSplit(row, ',');
    if (fields.size() != 2 || fields[0].empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": expected 'id,is_member'"));
    }
    bool member;
    if (fields[1] == "1" || fields[1] == "true") {
      member = true;
    } else if (fields[1] == "0" || fields[1] == "false") {
      member = false;
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": is_member must be 0/1/true/false"));
    }
    if (!labels.emplace(std::string(fields[0]), member).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": duplicate id '", fields[0], "'"));
    }
  }
  return labels;
}

absl::StatusOr<Labels> LoadLabels(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  return ParseLabelsCsv(in);
}

std::string FormatLabelsCsv(
    const std::vector<std::pair<std::string, bool>>& rows) {
  std::string out = "id,is_member\n";
  for (const auto& [id, member] : rows) {
    absl::StrAppend(&out, id, ",", member ? 1 : 0, "\n");
  }
  return out;
}

absl::StatusOr<MethodMetrics> ComputeMethodMetrics(
    const attack::AttackReport& report, const Labels& labels) {
  metrics::LabeledScores by_ratio;
  metrics::LabeledScores by_loss;
  for (const attack::Verdict& v : report.verdicts) {
    const auto it = labels.find(v.candidate_id);
    if (it == labels.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("no label for candidate '", v.candidate_id, "'"));
    }
    by_ratio.items.push_back({v.score.r, it->second});
    by_loss.items.push_back({v.score.l_t, it->second});
  }
  MethodMetrics out;
  TSAUDIT_ASSIGN_OR_RETURN(out.lbrm_curve, metrics::BuildRocCurve(by_ratio));
  TSAUDIT_ASSIGN_OR_RETURN(out.naive_curve, metrics::BuildRocCurve(by_loss));
  TSAUDIT_ASSIGN_OR_RETURN(out.lbrm, metrics::Summarize(by_ratio));
  TSAUDIT_ASSIGN_OR_RETURN(out.naive, metrics::Summarize(by_loss));
  return out;
}

nlohmann::json MetricsBlock(const metrics::Summary& summary,
                            const std::vector<std::string>& names) {
  const nlohmann::json all = metrics::SummaryToJson(summary);
  nlohmann::json block = nlohmann::json::object();
  for (const std::string& name : names) {
    if (all.contains(name)) block[name] = all.at(name);
  }
  return block;
}

}  // namespace tsaudit::harness
