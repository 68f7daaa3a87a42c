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

#ifndef TSAUDIT_MODELS_SERIALIZATION_H_
#define TSAUDIT_MODELS_SERIALIZATION_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/models/trained_imputer.h"

namespace tsaudit::models {

// Self-describing JSON dump: format tag, config, window shape, flat
// parameters and loss history. Doubles are written in shortest round-trip
// form, so Save followed by Load is bit-exact.
nlohmann::json ImputerToJson(const TrainedImputer& model);
absl::StatusOr<TrainedImputer> ImputerFromJson(const nlohmann::json& j);

absl::Status SaveImputer(const TrainedImputer& model, const std::string& path);
absl::StatusOr<TrainedImputer> LoadImputer(const std::string& path);

}  // namespace tsaudit::models

#endif  // TSAUDIT_MODELS_SERIALIZATION_H_
