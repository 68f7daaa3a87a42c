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

#include "tsaudit/data/synthetic.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "tsaudit/core/json_fields.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::data {

SyntheticConfig DefaultSyntheticConfig(Family family) {
  SyntheticConfig cfg;
  cfg.family = family;
  if (family == Family::kB) {
    cfg.freq_min = 0.10;
    cfg.freq_max = 0.20;
  }
  return cfg;
}

absl::Status Validate(const SyntheticConfig& cfg) {
  if (cfg.count < 1 || cfg.length < 1 || cfg.dims < 1) {
    return absl::InvalidArgumentError(
        "synthetic count, length and dims must be positive");
  }
  if (!(cfg.freq_min > 0.0 && cfg.freq_min <= cfg.freq_max &&
        cfg.freq_max <= 0.5)) {
    return absl::InvalidArgumentError(
        "need 0 < freq_min <= freq_max <= 0.5 cycles per step");
  }
  if (!(cfg.amplitude_min >= 0.0 && cfg.amplitude_min <= cfg.amplitude_max)) {
    return absl::InvalidArgumentError("need 0 <= amplitude_min <= amplitude_max");
  }
  if (!(cfg.noise_min >= 0.0 && cfg.noise_min <= cfg.noise_max)) {
    return absl::InvalidArgumentError("need 0 <= noise_min <= noise_max");
  }
  if (!(std::abs(cfg.ar_coefficient) < 1.0)) {
    return absl::InvalidArgumentError("|ar_coefficient| must be < 1");
  }
  if (cfg.components_min < 1 || cfg.components_min > cfg.components_max) {
    return absl::InvalidArgumentError(
        "need 1 <= components_min <= components_max");
  }
  return absl::OkStatus();
}

absl::Status CheckFrequencySeparation(const SyntheticConfig& a,
                                      const SyntheticConfig& b) {
  if (a.freq_max < b.freq_min || b.freq_max < a.freq_min) {
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "frequency bands [%g, %g] and [%g, %g] overlap", a.freq_min, a.freq_max,
      b.freq_min, b.freq_max));
}

absl::StatusOr<std::vector<TimeSeries>> GenerateSynthetic(
    const SyntheticConfig& cfg) {
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  const std::string prefix =
      cfg.id_prefix.empty() ? (cfg.family == Family::kA ? "A" : "B")
                            : cfg.id_prefix;
  const double innovation_scale =
      std::sqrt(1.0 - cfg.ar_coefficient * cfg.ar_coefficient);
  std::vector<TimeSeries> out;
  out.reserve(cfg.count);
  for (int i = 0; i < cfg.count; ++i) {
    Rng rng(DeriveSeed(cfg.seed, static_cast<std::uint64_t>(i)));
    const double noise = rng.Uniform(cfg.noise_min, cfg.noise_max);
    SeriesMatrix values = SeriesMatrix::Zero(cfg.length, cfg.dims);
    for (int d = 0; d < cfg.dims; ++d) {
      const int components =
          cfg.components_min +
          static_cast<int>(rng.UniformIndex(
              static_cast<std::uint64_t>(cfg.components_max -
                                         cfg.components_min + 1)));
      for (int c = 0; c < components; ++c) {
        const double freq = rng.Uniform(cfg.freq_min, cfg.freq_max);
        const double amp = rng.Uniform(cfg.amplitude_min, cfg.amplitude_max);
        const double phase = rng.Uniform(0.0, 2.0 * std::numbers::pi);
        for (int t = 0; t < cfg.length; ++t) {
          values(t, d) +=
              amp * std::sin(2.0 * std::numbers::pi * freq * t + phase);
        }
      }
      // Stationary start: e_0 ~ N(0, noise^2).
      double e = noise * rng.Normal();
      for (int t = 0; t < cfg.length; ++t) {
        if (t > 0) {
          e = cfg.ar_coefficient * e + noise * innovation_scale * rng.Normal();
        }
        values(t, d) += e;
      }
    }
    TSAUDIT_ASSIGN_OR_RETURN(
        TimeSeries series,
        TimeSeries::Create(absl::StrFormat("%s%05d", prefix, i),
                           std::move(values)));
    out.push_back(std::move(series));
  }
  return out;
}

nlohmann::json ToJson(const SyntheticConfig& cfg) {
  return {{"family", cfg.family == Family::kA ? "A" : "B"},
          {"count", cfg.count},
          {"length", cfg.length},
          {"dims", cfg.dims},
          {"seed", cfg.seed},
          {"freq_min", cfg.freq_min},
          {"freq_max", cfg.freq_max},
          {"amplitude_min", cfg.amplitude_min},
          {"amplitude_max", cfg.amplitude_max},
          {"noise_min", cfg.noise_min},
          {"noise_max", cfg.noise_max},
          {"ar_coefficient", cfg.ar_coefficient},
          {"components_min", cfg.components_min},
          {"components_max", cfg.components_max},
          {"id_prefix", cfg.id_prefix}};
}

absl::StatusOr<SyntheticConfig> SyntheticConfigFromJson(
    const nlohmann::json& j) {
  std::string family = "A";
  JsonFields head(j, "synthetic");
  head.Read("family", family);
  TSAUDIT_RETURN_IF_ERROR(head.status());
  if (family != "A" && family != "B") {
    return absl::InvalidArgumentError(
        absl::StrCat("synthetic.family must be \"A\" or \"B\", got '", family,
                     "'"));
  }
  SyntheticConfig cfg =
      DefaultSyntheticConfig(family == "A" ? Family::kA : Family::kB);
  JsonFields fields(j, "synthetic");
  fields
      .OnlyKeys({"family", "count", "length", "dims", "seed", "freq_min",
                 "freq_max", "amplitude_min", "amplitude_max", "noise_min",
                 "noise_max", "ar_coefficient", "components_min",
                 "components_max", "id_prefix"})
      .Read("count", cfg.count)
      .Read("length", cfg.length)
      .Read("dims", cfg.dims)
      .Read("seed", cfg.seed)
      .Read("freq_min", cfg.freq_min)
      .Read("freq_max", cfg.freq_max)
      .Read("amplitude_min", cfg.amplitude_min)
      .Read("amplitude_max", cfg.amplitude_max)
      .Read("noise_min", cfg.noise_min)
      .Read("noise_max", cfg.noise_max)
      .Read("ar_coefficient", cfg.ar_coefficient)
      .Read("components_min", cfg.components_min)
      .Read("components_max", cfg.components_max)
      .Read("id_prefix", cfg.id_prefix);
  TSAUDIT_RETURN_IF_ERROR(fields.status());
  TSAUDIT_RETURN_IF_ERROR(Validate(cfg));
  return cfg;
}

}  // namespace tsaudit::data
