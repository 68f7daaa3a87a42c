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

#include "tsaudit/harness/experiment_config.h"

#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/core/json_fields.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::harness {
namespace {

absl::StatusOr<DataSource> DataSourceFromJson(const nlohmann::json& j) {
  DataSource source;
  std::string kind = "synthetic";
  JsonFields fields(j, "data");
  fields
      .OnlyKeys({"source", "synthetic", "public_synthetic", "path",
                 "public_path"})
      .Read("source", kind)
      .Read("path", source.csv_path)
      .Read("public_path", source.public_csv_path);
  TSAUDIT_RETURN_IF_ERROR(fields.status());
  if (kind == "synthetic") {
    source.kind = DataSource::Kind::kSynthetic;
  } else if (kind == "csv") {
    source.kind = DataSource::Kind::kCsv;
    if (source.csv_path.empty()) {
      return absl::InvalidArgumentError("data.path is required for csv input");
    }
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "data.source must be synthetic or csv, got '", kind, "'"));
  }
  if (fields.Has("synthetic")) {
    TSAUDIT_ASSIGN_OR_RETURN(source.synthetic,
                             data::SyntheticConfigFromJson(j.at("synthetic")));
  }
  if (fields.Has("public_synthetic")) {
    TSAUDIT_ASSIGN_OR_RETURN(
        source.public_synthetic,
        data::SyntheticConfigFromJson(j.at("public_synthetic")));
  }
  return source;
}

nlohmann::json DataSourceToJson(const DataSource& source) {
  nlohmann::json j;
  if (source.kind == DataSource::Kind::kSynthetic) {
    j["source"] = "synthetic";
    j["synthetic"] = data::ToJson(source.synthetic);
    if (source.public_synthetic.has_value()) {
      j["public_synthetic"] = data::ToJson(*source.public_synthetic);
    }
  } else {
    j["source"] = "csv";
    j["path"] = source.csv_path;
    if (!source.public_csv_path.empty()) {
      j["public_path"] = source.public_csv_path;
    }
  }
  return j;
}

}  // namespace

absl::Status Validate(const ExperimentConfig& cfg) {
  if (cfg.scenario != 1 && cfg.scenario != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("scenario must be 1 or 2, got ", cfg.scenario));
  }
  if (cfg.scenario == 2 && !cfg.fine_tune.has_value()) {
    return absl::InvalidArgumentError("scenario 2 needs a fine_tune config");
  }
  if (!(cfg.parity_tolerance > 0.0)) {
    return absl::InvalidArgumentError("parity_tolerance must be positive");
  }
  if (cfg.attack.repeats < 1) {
    return absl::InvalidArgumentError("attack.repeats must be >= 1");
  }
  static const std::set<std::string> kKnown = {"auroc", "tpr_at_0_1",
                                               "tpr_at_top25"};
  for (const std::string& m : cfg.metrics) {
    if (!kKnown.contains(m)) {
      return absl::InvalidArgumentError(absl::StrCat("unknown metric '", m,
                                                     "'"));
    }
  }
  TSAUDIT_RETURN_IF_ERROR(models::Validate(cfg.target));
  TSAUDIT_RETURN_IF_ERROR(models::Validate(cfg.reference));
  if (cfg.fine_tune.has_value()) {
    TSAUDIT_RETURN_IF_ERROR(models::Validate(*cfg.fine_tune));
  }
  if (cfg.data.kind == DataSource::Kind::kSynthetic) {
    TSAUDIT_RETURN_IF_ERROR(data::Validate(cfg.data.synthetic));
    if (cfg.data.public_synthetic.has_value()) {
      TSAUDIT_RETURN_IF_ERROR(data::Validate(*cfg.data.public_synthetic));
      if (cfg.scenario == 1) {
        TSAUDIT_RETURN_IF_ERROR(data::CheckFrequencySeparation(
            cfg.data.synthetic, *cfg.data.public_synthetic));
      }
    }
  }
  return absl::OkStatus();
}

nlohmann::json AttackConfigToJson(const attack::AttackConfig& cfg) {
  return {{"block_length", cfg.mask_spec.length},
          {"dim", cfg.mask_spec.dim},
          {"repeats", cfg.repeats},
          {"theta_rule", cfg.theta_rule.ToString()},
          {"seed", cfg.seed}};
}

absl::StatusOr<attack::AttackConfig> AttackConfigFromJson(
    const nlohmann::json& j) {
  attack::AttackConfig cfg;
  std::string rule = cfg.theta_rule.ToString();
  JsonFields fields(j, "attack");
  fields.OnlyKeys({"block_length", "dim", "repeats", "theta_rule", "seed"})
      .Read("block_length", cfg.mask_spec.length)
      .Read("dim", cfg.mask_spec.dim)
      .Read("repeats", cfg.repeats)
      .Read("theta_rule", rule)
      .Read("seed", cfg.seed);
  TSAUDIT_RETURN_IF_ERROR(fields.status());
  TSAUDIT_ASSIGN_OR_RETURN(cfg.theta_rule, attack::ThetaRule::Parse(rule));
  if (cfg.repeats < 1) {
    return absl::InvalidArgumentError("attack.repeats must be >= 1");
  }
  if (cfg.mask_spec.length < 1) {
    return absl::InvalidArgumentError("attack.block_length must be >= 1");
  }
  return cfg;
}

absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const nlohmann::json& j) {
  ExperimentConfig cfg;
  JsonFields fields(j, "experiment");
  fields
      .OnlyKeys({"description", "scenario", "seed", "data", "normalize", "target",
                 "reference", "fine_tune", "independent_reference", "attack",
                 "metrics", "parity_tolerance", "override_parity",
                 "output_dir"})
      .Read("description", cfg.description)
      .Read("scenario", cfg.scenario)
      .Read("seed", cfg.seed)
      .Read("normalize", cfg.normalize)
      .Read("independent_reference", cfg.independent_reference)
      .Read("metrics", cfg.metrics)
      .Read("parity_tolerance", cfg.parity_tolerance)
      .Read("override_parity", cfg.override_parity)
      .Read("output_dir", cfg.output_dir);
  TSAUDIT_RETURN_IF_ERROR(fields.status());
  if (fields.Has("data")) {
    TSAUDIT_ASSIGN_OR_RETURN(cfg.data, DataSourceFromJson(j.at("data")));
  }
  if (fields.Has("target")) {
    TSAUDIT_ASSIGN_OR_RETURN(cfg.target,
                             models::ImputerConfigFromJson(j.at("target")));
  }
  if (fields.Has("reference")) {
    TSAUDIT_ASSIGN_OR_RETURN(cfg.reference,
                             models::ImputerConfigFromJson(j.at("reference")));
  }
  if (fields.Has("fine_tune")) {
    TSAUDIT_ASSIGN_OR_RETURN(cfg.fine_tune,
                             models::ImputerConfigFromJson(j.at("fine_tune")));
  }
  if (fields.Has("attack")) {
    TSAUDIT_ASSIGN_OR_RETURN(cfg.attack, AttackConfigFromJson(j.at("attack")));
  }
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  return cfg;
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) {
    return absl::NotFoundError(
        absl::StrCat("cannot read config file '", path, "'"));
  }
  const nlohmann::json j =
      nlohmann::json::parse(*text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("config file '", path, "' is not valid JSON"));
  }
  auto cfg = ExperimentConfigFromJson(j);
  if (!cfg.ok()) {
    return absl::Status(cfg.status().code(),
                        absl::StrCat(path, ": ", cfg.status().message()));
  }
  return cfg;
}

nlohmann::json ToJson(const ExperimentConfig& cfg) {
  nlohmann::json j;
  if (!cfg.description.empty()) j["description"] = cfg.description;
  j["scenario"] = cfg.scenario;
  j["seed"] = cfg.seed;
  j["data"] = DataSourceToJson(cfg.data);
  j["normalize"] = cfg.normalize;
  j["target"] = models::ToJson(cfg.target);
  j["reference"] = models::ToJson(cfg.reference);
  if (cfg.fine_tune.has_value()) j["fine_tune"] = models::ToJson(*cfg.fine_tune);
  j["independent_reference"] = cfg.independent_reference;
  j["attack"] = AttackConfigToJson(cfg.attack);
  j["metrics"] = cfg.metrics;
  j["parity_tolerance"] = cfg.parity_tolerance;
  j["override_parity"] = cfg.override_parity;
  return j;
}

}  // namespace tsaudit::harness
