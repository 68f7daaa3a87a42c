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

#include "tsaudit/models/serialization.h"

#include "absl/strings/str_cat.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/core/json_fields.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::models {
namespace {

constexpr char kFormat[] = "tsaudit-imputer";
constexpr int kVersion = 1;

}  // namespace

nlohmann::json ImputerToJson(const TrainedImputer& model) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["config"] = ToJson(model.config());
  j["length"] = model.length();
  j["dims"] = model.dims();
  j["parameters"] = std::vector<double>(model.parameters().begin(),
                                        model.parameters().end());
  j["history"] =
      std::vector<double>(model.history().begin(), model.history().end());
  return j;
}

absl::StatusOr<TrainedImputer> ImputerFromJson(const nlohmann::json& j) {
  std::string format;
  int version = 0;
  int length = 0;
  int dims = 0;
  std::vector<double> parameters;
  std::vector<double> history;
  JsonFields fields(j, "model");
  fields.Require("format", format)
      .Require("version", version)
      .Require("length", length)
      .Require("dims", dims)
      .Require("parameters", parameters)
      .Read("history", history);
  TSAUDIT_RETURN_IF_ERROR(fields.status());
  if (format != kFormat || version != kVersion) {
    return absl::InvalidArgumentError(absl::StrCat(
        "not a ", kFormat, " v", kVersion, " file (format '", format,
        "', version ", version, ")"));
  }
  if (!fields.Has("config")) {
    return absl::InvalidArgumentError("model file has no config");
  }
  TSAUDIT_ASSIGN_OR_RETURN(ImputerConfig cfg,
                           ImputerConfigFromJson(j.at("config")));
  return TrainedImputer::Create(std::move(cfg), length, dims,
                                std::move(parameters), std::move(history));
}

absl::Status SaveImputer(const TrainedImputer& model, const std::string& path) {
  return WriteFileAtomic(path, ImputerToJson(model).dump() + "\n");
}

absl::StatusOr<TrainedImputer> LoadImputer(const std::string& path) {
  TSAUDIT_ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  const nlohmann::json j = nlohmann::json::parse(text, nullptr,
                                                 /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", path, "' is not valid JSON"));
  }
  return ImputerFromJson(j);
}

}  // namespace tsaudit::models
