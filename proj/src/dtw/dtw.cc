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

#include "tsaudit/dtw/dtw.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tsaudit::dtw {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

absl::Status CheckPair(const TimeSeries& a, const TimeSeries& b) {
  if (a.length() < 1 || b.length() < 1) {
    return absl::InvalidArgumentError("DTW needs nonempty series");
  }
  if (a.dims() != b.dims()) {
    return absl::InvalidArgumentError(
        absl::StrCat("DTW dimension mismatch: ", a.dims(), " vs ", b.dims()));
  }
  return absl::OkStatus();
}

void Enumerate(const TimeSeries& a, const TimeSeries& b, int i, int j,
               double so_far, double& best) {
  so_far += PointDistance(a, i, b, j);
  const int last_i = a.length() - 1;
  const int last_j = b.length() - 1;
  if (i == last_i && j == last_j) {
    best = std::min(best, so_far);
    return;
  }
  if (i < last_i) Enumerate(a, b, i + 1, j, so_far, best);
  if (j < last_j) Enumerate(a, b, i, j + 1, so_far, best);
  if (i < last_i && j < last_j) Enumerate(a, b, i + 1, j + 1, so_far, best);
}

}  // namespace

double PointDistance(const TimeSeries& a, int i, const TimeSeries& b, int j) {
  if (a.dims() == 1) return std::abs(a.at(i, 0) - b.at(j, 0));
  return (a.values().row(i) - b.values().row(j)).norm();
}

absl::StatusOr<DtwCost> DtwDistance(const TimeSeries& a, const TimeSeries& b,
                                    const DtwOptions& options) {
  if (absl::Status s = CheckPair(a, b); !s.ok()) return s;
  const int n = a.length();
  const int m = b.length();
  int radius = std::max(n, m);
  if (options.band_radius.has_value()) {
    if (*options.band_radius < 0) {
      return absl::InvalidArgumentError("DTW band radius must be >= 0");
    }
    radius = std::max(*options.band_radius, std::abs(n - m));
  }

  // Two rolling rows of the (n+1) x (m+1) table with the usual infinite
  // border; row 0 / column 0 are the virtual origin.
  std::vector<double> prev(m + 1, kInf);
  std::vector<double> curr(m + 1, kInf);
  prev[0] = 0.0;
  for (int i = 1; i <= n; ++i) {
    std::fill(curr.begin(), curr.end(), kInf);
    const int lo = std::max(1, i - radius);
    const int hi = std::min(m, i + radius);
    for (int j = lo; j <= hi; ++j) {
      const double step = std::min({prev[j], curr[j - 1], prev[j - 1]});
      curr[j] = PointDistance(a, i - 1, b, j - 1) + step;
    }
    std::swap(prev, curr);
  }
  return DtwCost{prev[m]};
}

absl::StatusOr<DtwCost> DtwBruteForce(const TimeSeries& a,
                                      const TimeSeries& b) {
  if (absl::Status s = CheckPair(a, b); !s.ok()) return s;
  if (a.length() * b.length() > kBruteForceMaxCells) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "brute-force DTW refuses ", a.length(), "x", b.length(),
        " inputs (limit ", kBruteForceMaxCells, " cells)"));
  }
  double best = kInf;
  Enumerate(a, b, 0, 0, 0.0, best);
  return DtwCost{best};
}

}  // namespace tsaudit::dtw
