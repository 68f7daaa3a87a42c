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

#ifndef TSAUDIT_DATA_SYNTHETIC_H_
#define TSAUDIT_DATA_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tsaudit/core/time_series.h"

namespace tsaudit::data {

// Family A lives in a low frequency band and family B in a high one; the two
// bands never overlap.
enum class Family { kA, kB };

struct SyntheticConfig {
  Family family = Family::kA;
  int count = 100;
  int length = 48;
  int dims = 1;
  std::uint64_t seed = 0;
  // Sinusoid frequencies in cycles per time step.
  double freq_min = 0.02;
  double freq_max = 0.06;
  double amplitude_min = 0.5;
  double amplitude_max = 2.0;
  // Each series draws its own stationary AR(1) noise standard deviation
  // uniformly from [noise_min, noise_max].
  double noise_min = 0.1;
  double noise_max = 0.5;
  double ar_coefficient = 0.5;
  int components_min = 1;
  int components_max = 3;
  // Ids are "<prefix><index>"; empty means the family letter.
  std::string id_prefix;
};

// Default parameters for a family: A in [0.02, 0.06], B in [0.10, 0.20].
SyntheticConfig DefaultSyntheticConfig(Family family);

absl::Status Validate(const SyntheticConfig& cfg);
// Two configs used as distinct distributions must have disjoint bands.
absl::Status CheckFrequencySeparation(const SyntheticConfig& a,
                                      const SyntheticConfig& b);

// Every series, per dimension, is a sum of components_min..components_max
// sinusoids with random frequency, amplitude and phase, plus AR(1) noise.
// Deterministic in cfg.seed.
absl::StatusOr<std::vector<TimeSeries>> GenerateSynthetic(
    const SyntheticConfig& cfg);

nlohmann::json ToJson(const SyntheticConfig& cfg);
// Starts from the family defaults, then applies the given keys.
absl::StatusOr<SyntheticConfig> SyntheticConfigFromJson(
    const nlohmann::json& j);

}  // namespace tsaudit::data

#endif  // TSAUDIT_DATA_SYNTHETIC_H_
