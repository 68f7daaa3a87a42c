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

#ifndef TSAUDIT_DATA_SPLIT_H_
#define TSAUDIT_DATA_SPLIT_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit::data {

// Public (O), private (P) and held-out test partitions of one corpus.
struct ScenarioSplit {
  std::vector<TimeSeries> public_set;
  std::vector<TimeSeries> private_set;
  std::vector<TimeSeries> test_set;
};

// Uniform random partition with |public| = floor(2N/5),
// |private| = floor(2N/5) and the remainder in test. Needs N >= 5 and
// distinct ids.
absl::StatusOr<ScenarioSplit> SplitScenario1(std::span<const TimeSeries> data,
                                             std::uint64_t seed);

// As above with |public| = floor(3N/5), |private| = floor(N/5).
absl::StatusOr<ScenarioSplit> SplitScenario2(std::span<const TimeSeries> data,
                                             std::uint64_t seed);

}  // namespace tsaudit::data

#endif  // TSAUDIT_DATA_SPLIT_H_
