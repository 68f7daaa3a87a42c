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

#include "tsaudit/models/imputer_config.h"

#include "absl/strings/str_cat.h"
#include "tsaudit/core/json_fields.h"

namespace tsaudit::models {

absl::string_view ArchitectureName(Architecture arch) {
  switch (arch) {
    case Architecture::kAutoencoder:
      return "autoencoder";
    case Architecture::kAttention:
      return "attention";
  }
  return "unknown";
}

absl::StatusOr<Architecture> ParseArchitecture(absl::string_view name) {
  if (name == "autoencoder") return Architecture::kAutoencoder;
  if (name == "attention") return Architecture::kAttention;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown architecture '", name,
                   "' (expected autoencoder or attention)"));
}

absl::Status Validate(const ImputerConfig& cfg) {
  if (cfg.epochs < 1) return absl::InvalidArgumentError("epochs must be >= 1");
  if (cfg.batch_size < 1) {
    return absl::InvalidArgumentError("batch_size must be >= 1");
  }
  if (!(cfg.learning_rate >= 0.0)) {
    return absl::InvalidArgumentError("learning_rate must be >= 0");
  }
  if (!(cfg.momentum >= 0.0 && cfg.momentum < 1.0)) {
    return absl::InvalidArgumentError("momentum must lie in [0, 1)");
  }
  if (!(cfg.train_mask_fraction > 0.0 && cfg.train_mask_fraction < 1.0)) {
    return absl::InvalidArgumentError(
        "train_mask_fraction must lie in (0, 1)");
  }
  switch (cfg.architecture) {
    case Architecture::kAutoencoder: {
      const AutoencoderShape& s = cfg.autoencoder;
      if (s.hidden1 < 1 || s.hidden2 < 1 || s.code < 1) {
        return absl::InvalidArgumentError(
            "autoencoder widths must be positive");
      }
      break;
    }
    case Architecture::kAttention: {
      const AttentionShape& s = cfg.attention;
      if (s.model_dim < 1 || s.heads < 1 || s.ffn_dim < 1 || s.blocks < 1) {
        return absl::InvalidArgumentError(
            "attention sizes must be positive");
      }
      if (s.model_dim % s.heads != 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "model_dim ", s.model_dim, " is not divisible by ", s.heads,
            " heads"));
      }
      break;
    }
  }
  return absl::OkStatus();
}

nlohmann::json ToJson(const ImputerConfig& cfg) {
  nlohmann::json j;
  j["architecture"] = std::string(ArchitectureName(cfg.architecture));
  j["autoencoder"] = {{"hidden1", cfg.autoencoder.hidden1},
                      {"hidden2", cfg.autoencoder.hidden2},
                      {"code", cfg.autoencoder.code}};
  j["attention"] = {{"model_dim", cfg.attention.model_dim},
                    {"heads", cfg.attention.heads},
                    {"ffn_dim", cfg.attention.ffn_dim},
                    {"blocks", cfg.attention.blocks}};
  j["epochs"] = cfg.epochs;
  j["batch_size"] = cfg.batch_size;
  j["learning_rate"] = cfg.learning_rate;
  j["momentum"] = cfg.momentum;
  j["train_mask_fraction"] = cfg.train_mask_fraction;
  j["seed"] = cfg.seed;
  return j;
}

absl::StatusOr<ImputerConfig> ImputerConfigFromJson(const nlohmann::json& j) {
  ImputerConfig cfg;
  std::string arch = std::string(ArchitectureName(cfg.architecture));
  JsonFields fields(j, "imputer");
  fields
      .OnlyKeys({"architecture", "autoencoder", "attention", "epochs",
                 "batch_size", "learning_rate", "momentum",
                 "train_mask_fraction", "seed"})
      .Read("architecture", arch)
      .Read("epochs", cfg.epochs)
      .Read("batch_size", cfg.batch_size)
      .Read("learning_rate", cfg.learning_rate)
      .Read("momentum", cfg.momentum)
      .Read("train_mask_fraction", cfg.train_mask_fraction)
      .Read("seed", cfg.seed);
  if (!fields.status().ok()) return fields.status();
  auto parsed = ParseArchitecture(arch);
  if (!parsed.ok()) return parsed.status();
  cfg.architecture = *parsed;

  if (fields.Has("autoencoder")) {
    JsonFields ae(j.at("autoencoder"), "imputer.autoencoder");
    ae.OnlyKeys({"hidden1", "hidden2", "code"})
        .Read("hidden1", cfg.autoencoder.hidden1)
        .Read("hidden2", cfg.autoencoder.hidden2)
        .Read("code", cfg.autoencoder.code);
    if (!ae.status().ok()) return ae.status();
  }
  if (fields.Has("attention")) {
    JsonFields at(j.at("attention"), "imputer.attention");
    at.OnlyKeys({"model_dim", "heads", "ffn_dim", "blocks"})
        .Read("model_dim", cfg.attention.model_dim)
        .Read("heads", cfg.attention.heads)
        .Read("ffn_dim", cfg.attention.ffn_dim)
        .Read("blocks", cfg.attention.blocks);
    if (!at.status().ok()) return at.status();
  }
  if (absl::Status s = Validate(cfg); !s.ok()) return s;
  return cfg;
}

}  // namespace tsaudit::models
