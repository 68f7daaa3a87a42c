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

#include "tsaudit/core/mask.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/random.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit {

absl::StatusOr<MaskMatrix> MaskMatrix::Create(Storage entries) {
  if (entries.rows() < 1 || entries.cols() < 1) {
    return absl::InvalidArgumentError("mask must be at least 1x1");
  }
  for (Eigen::Index i = 0; i < entries.size(); ++i) {
    if (entries.data()[i] > 1) {
      return absl::InvalidArgumentError("mask entries must be 0 or 1");
    }
  }
  return MaskMatrix(std::move(entries));
}

MaskMatrix MaskMatrix::AllObserved(int length, int dims) {
  return MaskMatrix(Storage::Ones(length, dims));
}

int MaskMatrix::CountMissing() const {
  int missing = 0;
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    if (entries_.data()[i] == 0) ++missing;
  }
  return missing;
}

absl::StatusOr<MaskedSeries> ApplyMask(const TimeSeries& x,
                                       const MaskMatrix& mask) {
  if (mask.length() != x.length() || mask.dims() != x.dims()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mask shape ", mask.length(), "x", mask.dims(),
        " does not match series shape ", x.length(), "x", x.dims()));
  }
  SeriesMatrix shown = x.values();
  for (int t = 0; t < x.length(); ++t) {
    for (int d = 0; d < x.dims(); ++d) {
      if (!mask.observed(t, d)) shown(t, d) = kMissingFill;
    }
  }
  TSAUDIT_ASSIGN_OR_RETURN(TimeSeries series, x.WithValues(std::move(shown)));
  return MaskedSeries(std::move(series), mask, x);
}

absl::StatusOr<MaskedSeries> SingleUnitMask(const TimeSeries& x,
                                            const MaskSpec& spec) {
  if (spec.length < 1) {
    return absl::InvalidArgumentError("mask block length must be >= 1");
  }
  if (spec.length >= x.length()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "mask block of length ", spec.length, " leaves nothing observed in a ",
        "series of length ", x.length()));
  }
  if (spec.dim < 0 || spec.dim >= x.dims() || spec.start < 0 ||
      spec.start + spec.length > x.length()) {
    return absl::OutOfRangeError(absl::StrCat(
        "mask block [", spec.start, ", ", spec.start + spec.length,
        ") in dim ", spec.dim, " is outside a ", x.length(), "x", x.dims(),
        " series"));
  }
  MaskMatrix::Storage entries = MaskMatrix::Storage::Ones(x.length(), x.dims());
  for (int t = spec.start; t < spec.start + spec.length; ++t) {
    entries(t, spec.dim) = 0;
  }
  TSAUDIT_ASSIGN_OR_RETURN(MaskMatrix mask, MaskMatrix::Create(entries));
  return ApplyMask(x, mask);
}

absl::StatusOr<MaskMatrix> RandomMissingMask(int length, int dims,
                                             double fraction,
                                             std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing fraction must lie in (0, 1), got ", fraction));
  }
  if (length < 1 || dims < 1) {
    return absl::InvalidArgumentError("mask shape must be at least 1x1");
  }
  const int total = length * dims;
  const int missing = static_cast<int>(std::lround(fraction * total));

  // Partial Fisher-Yates: the first `missing` slots are the hidden cells.
  std::vector<int> cells(total);
  std::iota(cells.begin(), cells.end(), 0);
  Rng rng(seed);
  for (int i = 0; i < missing; ++i) {
    const int j = i + static_cast<int>(rng.UniformIndex(total - i));
    std::swap(cells[i], cells[j]);
  }
  MaskMatrix::Storage entries = MaskMatrix::Storage::Ones(length, dims);
  for (int i = 0; i < missing; ++i) {
    entries(cells[i] / dims, cells[i] % dims) = 0;
  }
  return MaskMatrix::Create(std::move(entries));
}

}  // namespace tsaudit
