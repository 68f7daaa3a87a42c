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

#ifndef TSAUDIT_DATA_CSV_H_
#define TSAUDIT_DATA_CSV_H_

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit::data {

// Long format, header `id,t,dim,value`, one row per (series, step, dim).
// Series come back in order of first appearance; within a series rows may be
// in any order but must cover the full T x D grid exactly once.
// Malformed rows fail with InvalidArgument naming the line; inconsistent
// shapes fail with FailedPrecondition.
absl::StatusOr<std::vector<TimeSeries>> ParseCsv(std::istream& in);
absl::StatusOr<std::vector<TimeSeries>> LoadCsv(const std::string& path);

// Rows grouped by id, ordered by t then dim, values in shortest round-trip
// form.
std::string FormatCsv(std::span<const TimeSeries> data);
absl::Status SaveCsv(std::span<const TimeSeries> data,
                     const std::string& path);

}  // namespace tsaudit::data

#endif  // TSAUDIT_DATA_CSV_H_
