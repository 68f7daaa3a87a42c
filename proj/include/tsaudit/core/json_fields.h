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

#ifndef TSAUDIT_CORE_JSON_FIELDS_H_
#define TSAUDIT_CORE_JSON_FIELDS_H_

#include <initializer_list>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "nlohmann/json.hpp"

namespace tsaudit {

// Reads optional, typed fields out of a JSON object, keeping the first error.
// Config readers use it so that a bad field names itself in the diagnostic.
class JsonFields {
 public:
  JsonFields(const nlohmann::json& object, std::string context)
      : object_(object), context_(std::move(context)) {
    if (!object_.is_object()) {
      status_ = absl::InvalidArgumentError(
          absl::StrCat(context_, ": expected a JSON object"));
    }
  }

  template <typename T>
  JsonFields& Read(absl::string_view key, T& out) {
    if (!status_.ok() || !object_.contains(std::string(key))) return *this;
    try {
      out = object_.at(std::string(key)).get<T>();
    } catch (const nlohmann::json::exception& e) {
      status_ = absl::InvalidArgumentError(
          absl::StrCat(context_, ".", key, ": ", e.what()));
    }
    return *this;
  }

  // Like Read, but a missing key is an error.
  template <typename T>
  JsonFields& Require(absl::string_view key, T& out) {
    if (status_.ok() && !Has(key)) {
      status_ = absl::InvalidArgumentError(
          absl::StrCat(context_, ": missing field '", key, "'"));
    }
    return Read(key, out);
  }

  bool Has(absl::string_view key) const {
    return object_.is_object() && object_.contains(std::string(key));
  }

  // Fails on keys outside `allowed`, catching typos in hand-written configs.
  JsonFields& OnlyKeys(std::initializer_list<absl::string_view> allowed) {
    if (!status_.ok()) return *this;
    for (const auto& [key, unused] : object_.items()) {
      bool known = false;
      for (absl::string_view a : allowed) known = known || key == a;
      if (!known) {
        status_ = absl::InvalidArgumentError(
            absl::StrCat(context_, ": unknown key '", key, "'"));
        break;
      }
    }
    return *this;
  }

  const absl::Status& status() const { return status_; }

 private:
  const nlohmann::json& object_;
  std::string context_;
  absl::Status status_;
};

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_JSON_FIELDS_H_
