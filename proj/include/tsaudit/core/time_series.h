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

#ifndef TSAUDIT_CORE_TIME_SERIES_H_
#define TSAUDIT_CORE_TIME_SERIES_H_

#include <string>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace tsaudit {

// Row-major T x D storage keeps a time step contiguous.
using SeriesMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A multivariate series with T time steps (rows) and D dimensions (columns).
// Immutable once built; every entry is finite.
class TimeSeries {
 public:
  static absl::StatusOr<TimeSeries> Create(std::string id,
                                           SeriesMatrix values);

  const std::string& id() const { return id_; }
  const SeriesMatrix& values() const { return values_; }
  int length() const { return static_cast<int>(values_.rows()); }
  int dims() const { return static_cast<int>(values_.cols()); }
  double at(int t, int d) const { return values_(t, d); }

  // Same id, new values. Used for oracle outputs and normalized copies.
  absl::StatusOr<TimeSeries> WithValues(SeriesMatrix values) const;

  friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
    return a.id_ == b.id_ && a.values_ == b.values_;
  }

 private:
  TimeSeries(std::string id, SeriesMatrix values)
      : id_(std::move(id)), values_(std::move(values)) {}

  std::string id_;
  SeriesMatrix values_;
};

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_TIME_SERIES_H_
