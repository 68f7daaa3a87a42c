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

#ifndef TSAUDIT_CORE_FILE_IO_H_
#define TSAUDIT_CORE_FILE_IO_H_

#include <string>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace tsaudit {

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partial file.
absl::Status WriteFileAtomic(const std::string& path,
                             absl::string_view contents);

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_FILE_IO_H_
