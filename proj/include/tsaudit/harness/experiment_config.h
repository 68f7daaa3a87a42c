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

#ifndef TSAUDIT_HARNESS_EXPERIMENT_CONFIG_H_
#define TSAUDIT_HARNESS_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/attack/lbrm.h"
#include "tsaudit/data/synthetic.h"
#include "tsaudit/models/imputer_config.h"

namespace tsaudit::harness {

struct DataSource {
  enum class Kind { kSynthetic, kCsv };

  Kind kind = Kind::kSynthetic;
  // Private-distribution corpus (split into O / P / test).
  data::SyntheticConfig synthetic;
  // Scenario 1 draws O from this differently distributed family instead of
  // the split's public slice. Defaults to family B with the same shape.
  std::optional<data::SyntheticConfig> public_synthetic;
  std::string csv_path;
  // Optional separate public corpus for scenario 1 with CSV input.
  std::string public_csv_path;
};

struct ExperimentConfig {
  // Free text carried through to the report, e.g. why a fixture trains long.
  std::string description;
  int scenario = 2;
  std::uint64_t seed = 0;
  DataSource data;
  // Z-score each series on its own before anything else.
  bool normalize = true;
  // Scenario 1: T trains on P with `target`, R on O with `reference`.
  // Scenario 2: R (and T's base) trains on O with `reference`, then T is
  // fine-tuned on P with `fine_tune`.
  models::ImputerConfig target;
  models::ImputerConfig reference;
  std::optional<models::ImputerConfig> fine_tune;
  // Scenario 2: train R separately instead of reusing T's base model.
  bool independent_reference = false;
  attack::AttackConfig attack;
  std::vector<std::string> metrics = {"auroc", "tpr_at_0_1", "tpr_at_top25"};
  double parity_tolerance = 0.1;
  bool override_parity = false;
  std::string output_dir = "tsaudit_out";
};

absl::Status Validate(const ExperimentConfig& cfg);

// Schema: see README. Unknown keys are rejected.
absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const nlohmann::json& j);
absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

// Canonical echo written into every report.
nlohmann::json ToJson(const ExperimentConfig& cfg);

nlohmann::json AttackConfigToJson(const attack::AttackConfig& cfg);
absl::StatusOr<attack::AttackConfig> AttackConfigFromJson(
    const nlohmann::json& j);

}  // namespace tsaudit::harness

#endif  // TSAUDIT_HARNESS_EXPERIMENT_CONFIG_H_
