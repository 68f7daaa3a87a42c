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

#ifndef TSAUDIT_DTW_DTW_H_
#define TSAUDIT_DTW_DTW_H_

#include <optional>

#include "absl/status/statusor.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit::dtw {

// Accumulated pointwise distance along an optimal alignment. Never negative.
struct DtwCost {
  double value = 0.0;
};

struct DtwOptions {
  // Sakoe-Chiba radius. Unset means unconstrained warping. The effective
  // radius is widened to |N - M| so that a path always exists.
  std::optional<int> band_radius;
};

// Euclidean distance between time step i of `a` and time step j of `b`.
double PointDistance(const TimeSeries& a, int i, const TimeSeries& b, int j);

// Dependent (shared-alignment) DTW by the O(N*M) dynamic program
//   cost(i, j) = d(i, j) + min(cost(i-1, j), cost(i, j-1), cost(i-1, j-1)).
// Fails if either series is empty or the dimensionalities differ.
absl::StatusOr<DtwCost> DtwDistance(const TimeSeries& a, const TimeSeries& b,
                                    const DtwOptions& options = {});

// Largest N * M accepted by DtwBruteForce.
inline constexpr int kBruteForceMaxCells = 36;

// Enumerates every monotone, continuous alignment path from (0, 0) to
// (N-1, M-1) and returns the cheapest. Test oracle for DtwDistance; refuses
// inputs with N * M > kBruteForceMaxCells.
absl::StatusOr<DtwCost> DtwBruteForce(const TimeSeries& a,
                                      const TimeSeries& b);

}  // namespace tsaudit::dtw

#endif  // TSAUDIT_DTW_DTW_H_
