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

#ifndef TSAUDIT_MODELS_IMPUTER_CONFIG_H_
#define TSAUDIT_MODELS_IMPUTER_CONFIG_H_

#include <cstdint>
#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"

namespace tsaudit::models {

enum class Architecture { kAutoencoder, kAttention };

absl::string_view ArchitectureName(Architecture arch);
absl::StatusOr<Architecture> ParseArchitecture(absl::string_view name);

// Dense autoencoder over the flattened (values, mask) window:
//   encoder: 2TD -> hidden1 -> hidden2, bottleneck: hidden2 -> code,
//   decoder: code -> hidden2 -> hidden1, head: hidden1 -> TD.
struct AutoencoderShape {
  int hidden1 = 64;
  int hidden2 = 32;
  int code = 16;
};

// Encoder-only transformer over time steps with sinusoidal positions.
struct AttentionShape {
  int model_dim = 16;
  int heads = 2;
  int ffn_dim = 32;
  int blocks = 1;
};

struct ImputerConfig {
  Architecture architecture = Architecture::kAutoencoder;
  AutoencoderShape autoencoder;
  AttentionShape attention;
  int epochs = 50;
  int batch_size = 16;
  double learning_rate = 0.01;
  double momentum = 0.9;
  // Share of entries hidden by the fresh per-sample training masks.
  double train_mask_fraction = 0.2;
  std::uint64_t seed = 0;
};

absl::Status Validate(const ImputerConfig& cfg);

nlohmann::json ToJson(const ImputerConfig& cfg);
// Missing keys keep their defaults; unknown keys are rejected.
absl::StatusOr<ImputerConfig> ImputerConfigFromJson(const nlohmann::json& j);

}  // namespace tsaudit::models

#endif  // TSAUDIT_MODELS_IMPUTER_CONFIG_H_
