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

#ifndef TSAUDIT_CORE_MASK_H_
#define TSAUDIT_CORE_MASK_H_

#include <cstdint>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit {

// Binary observedness indicator: 1 = observed, 0 = missing.
class MaskMatrix {
 public:
  using Storage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic,
                                Eigen::RowMajor>;

  static absl::StatusOr<MaskMatrix> Create(Storage entries);
  static MaskMatrix AllObserved(int length, int dims);

  int length() const { return static_cast<int>(entries_.rows()); }
  int dims() const { return static_cast<int>(entries_.cols()); }
  bool observed(int t, int d) const { return entries_(t, d) != 0; }
  const Storage& entries() const { return entries_; }
  int CountMissing() const;
  // 1.0 / 0.0 view, convenient for arithmetic.
  SeriesMatrix AsWeights() const { return entries_.cast<double>(); }

  friend bool operator==(const MaskMatrix& a, const MaskMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  explicit MaskMatrix(Storage entries) : entries_(std::move(entries)) {}

  Storage entries_;
};

// A contiguous block of `length` time steps starting at `start` in dimension
// `dim`. The default hides a single point.
struct MaskSpec {
  int start = 0;
  int length = 1;
  int dim = 0;
};

// A series prepared for an imputation query. `series()` is what the oracle
// sees (missing entries hold 0); `original()` stays with the auditor.
class MaskedSeries {
 public:
  const TimeSeries& series() const { return series_; }
  const MaskMatrix& mask() const { return mask_; }
  const TimeSeries& original() const { return original_; }

 private:
  friend absl::StatusOr<MaskedSeries> ApplyMask(const TimeSeries&,
                                                const MaskMatrix&);
  MaskedSeries(TimeSeries series, MaskMatrix mask, TimeSeries original)
      : series_(std::move(series)),
        mask_(std::move(mask)),
        original_(std::move(original)) {}

  TimeSeries series_;
  MaskMatrix mask_;
  TimeSeries original_;
};

// Sentinel stored at missing positions.
inline constexpr double kMissingFill = 0.0;

absl::StatusOr<MaskedSeries> ApplyMask(const TimeSeries& x,
                                       const MaskMatrix& mask);

// Hides one contiguous block. Fails with OutOfRange when the block leaves the
// series and with FailedPrecondition when it would cover every time step.
absl::StatusOr<MaskedSeries> SingleUnitMask(const TimeSeries& x,
                                            const MaskSpec& spec);

// Exactly round(fraction * T * D) missing entries, chosen uniformly without
// replacement; deterministic in `seed`.
absl::StatusOr<MaskMatrix> RandomMissingMask(int length, int dims,
                                             double fraction,
                                             std::uint64_t seed);

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_MASK_H_
