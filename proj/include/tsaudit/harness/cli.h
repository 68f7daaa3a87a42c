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

#ifndef TSAUDIT_HARNESS_CLI_H_
#define TSAUDIT_HARNESS_CLI_H_

#include <ostream>
#include <string>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/attack/attack_report.h"
#include "tsaudit/harness/report_io.h"

namespace tsaudit::harness {

// Exit code for malformed command lines (unknown flag or subcommand).
inline constexpr int kUsageExitCode = 2;

// Names the output-directory override read from the environment. It beats
// the config file but loses to --out.
inline constexpr char kOutputDirEnv[] = "TSAUDIT_OUTPUT_DIR";

// Entry point of the `tsaudit` tool. Writes diagnostics to `err` and returns
// the process exit code.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

// Metrics-only report of a scored attack, as written by `metrics`.
struct MetricsReport {
  attack::AttackReport scores;
  MethodMetrics methods;
};

// Reclassifies `scores` under `rule` and recomputes both methods' metrics.
// std_rule calibrates on the candidates labelled non-member.
absl::StatusOr<MetricsReport> RecomputeMetrics(attack::AttackReport scores,
                                               const attack::ThetaRule& rule,
                                               const Labels& labels);

nlohmann::json ToJson(const MetricsReport& report,
                      const std::vector<std::string>& metric_names);

}  // namespace tsaudit::harness

#endif  // TSAUDIT_HARNESS_CLI_H_
