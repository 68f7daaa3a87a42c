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

#ifndef TSAUDIT_HARNESS_SCENARIO_H_
#define TSAUDIT_HARNESS_SCENARIO_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/attack/attack_report.h"
#include "tsaudit/data/synthetic.h"
#include "tsaudit/harness/experiment_config.h"
#include "tsaudit/harness/report_io.h"
#include "tsaudit/models/evaluation.h"
#include "tsaudit/models/trained_imputer.h"

namespace tsaudit::harness {

struct SplitSizes {
  int public_count = 0;
  int private_count = 0;
  int test_count = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  SplitSizes split;
  models::ParityReport parity;
  // MAE of the target on its own private training data (memorisation gauge).
  double target_private_mae = 0.0;
  attack::AttackReport scores;
  std::vector<std::pair<std::string, bool>> labels;
  MethodMetrics methods;
  // Kept out of ToJson so that report.json depends only on config and seed.
  double wall_seconds = 0.0;
};

// Deterministic report.json body.
nlohmann::json ToJson(const ExperimentReport& report);

// The two fitted models of a run, exposed for inspection and tests.
struct TrainedPair {
  std::optional<models::TrainedImputer> target;
  std::optional<models::TrainedImputer> reference;
  // Scenario 2 only: the public-data model T was fine-tuned from.
  std::optional<models::TrainedImputer> base;
};

// The scenario-1 public corpus config: the explicit one if set, else the
// opposite family's defaults with the private corpus's shape and noise.
data::SyntheticConfig PublicSyntheticConfig(const ExperimentConfig& cfg);

// Scenario 1: T trains on P only, R on a differently distributed O.
// Scenario 2: R trains on O, T is that model fine-tuned on P.
// Candidates are P (members) followed by the test split (non-members); both
// methods are scored from one query pass. A failed parity check aborts with
// FailedPrecondition unless cfg.override_parity is set.
absl::StatusOr<ExperimentReport> RunScenario1(const ExperimentConfig& cfg,
                                              TrainedPair* models = nullptr);
absl::StatusOr<ExperimentReport> RunScenario2(const ExperimentConfig& cfg,
                                              TrainedPair* models = nullptr);
absl::StatusOr<ExperimentReport> RunScenario(const ExperimentConfig& cfg,
                                             TrainedPair* models = nullptr);

// report.json, scores.json, roc_lbrm.csv, roc_naive.csv, labels.csv and
// timing.json, each written atomically. Creates `dir` if needed.
absl::Status WriteExperimentOutputs(const ExperimentReport& report,
                                    const std::string& dir);

}  // namespace tsaudit::harness

#endif  // TSAUDIT_HARNESS_SCENARIO_H_
