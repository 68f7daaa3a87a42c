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

#include "tsaudit/core/normalize.h"

#include <cmath>

namespace tsaudit {

std::pair<TimeSeries, NormParams> ZScoreNormalize(const TimeSeries& x) {
  const SeriesMatrix& v = x.values();
  NormParams params;
  params.mean = v.colwise().mean();
  params.scale.resize(v.cols());
  SeriesMatrix out(v.rows(), v.cols());
  for (Eigen::Index d = 0; d < v.cols(); ++d) {
    const auto centered = v.col(d).array() - params.mean(d);
    const double sigma = std::sqrt(centered.square().mean());
    if (sigma > 0.0 && std::isfinite(sigma)) {
      params.scale(d) = sigma;
      out.col(d) = centered / sigma;
    } else {
      params.scale(d) = 1.0;
      out.col(d).setZero();
    }
  }
  // Affine images of finite values stay finite.
  return {*x.WithValues(std::move(out)), std::move(params)};
}

TimeSeries Denormalize(const TimeSeries& x, const NormParams& params) {
  SeriesMatrix out = x.values();
  for (Eigen::Index d = 0; d < out.cols(); ++d) {
    out.col(d) = out.col(d).array() * params.scale(d) + params.mean(d);
  }
  return *x.WithValues(std::move(out));
}

}  // namespace tsaudit
