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

#ifndef TSAUDIT_CORE_IMPUTATION_ORACLE_H_
#define TSAUDIT_CORE_IMPUTATION_ORACLE_H_

#include <atomic>
#include <cstdint>

#include "absl/status/statusor.h"
#include "tsaudit/core/mask.h"
#include "tsaudit/core/time_series.h"

namespace tsaudit {

// Black-box query boundary: a masked series goes in, a completed series of
// the same shape comes out. Implementations copy observed entries through
// unchanged and must be safe for concurrent Impute calls.
class ImputationOracle {
 public:
  virtual ~ImputationOracle() = default;
  virtual absl::StatusOr<TimeSeries> Impute(const MaskedSeries& x) const = 0;
};

// Merges a full-size prediction with the observed entries of `x`.
absl::StatusOr<TimeSeries> KeepObserved(const MaskedSeries& x,
                                        const SeriesMatrix& prediction);

// Forwards to another oracle and counts queries.
class CountingOracle : public ImputationOracle {
 public:
  explicit CountingOracle(const ImputationOracle& inner) : inner_(inner) {}

  absl::StatusOr<TimeSeries> Impute(const MaskedSeries& x) const override {
    queries_.fetch_add(1, std::memory_order_relaxed);
    return inner_.Impute(x);
  }
  std::int64_t queries() const {
    return queries_.load(std::memory_order_relaxed);
  }

 private:
  const ImputationOracle& inner_;
  mutable std::atomic<std::int64_t> queries_{0};
};

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_IMPUTATION_ORACLE_H_
