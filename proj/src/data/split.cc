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

#include "tsaudit/data/split.h"

#include <numeric>
#include <set>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "tsaudit/core/random.h"

namespace tsaudit::data {
namespace {

absl::StatusOr<ScenarioSplit> Partition(std::span<const TimeSeries> data,
                                        std::uint64_t seed, int public_fifths,
                                        int private_fifths) {
  const std::size_t n = data.size();
  if (n < 5) {
    return absl::InvalidArgumentError(
        absl::StrCat("splitting needs at least 5 series, got ", n));
  }
  std::set<std::string> ids;
  for (const TimeSeries& x : data) {
    if (!ids.insert(x.id()).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate series id '", x.id(), "'"));
    }
  }
  const std::size_t n_public = public_fifths * n / 5;
  const std::size_t n_private = private_fifths * n / 5;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, "split"));
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.UniformIndex(i)]);
  }
  ScenarioSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    const TimeSeries& x = data[order[i]];
    if (i < n_public) {
      split.public_set.push_back(x);
    } else if (i < n_public + n_private) {
      split.private_set.push_back(x);
    } else {
      split.test_set.push_back(x);
    }
  }
  return split;
}

}  // namespace

absl::StatusOr<ScenarioSplit> SplitScenario1(std::span<const TimeSeries> data,
                                             std::uint64_t seed) {
  return Partition(data, seed, 2, 2);
}

absl::StatusOr<ScenarioSplit> SplitScenario2(std::span<const TimeSeries> data,
                                             std::uint64_t seed) {
  return Partition(data, seed, 3, 1);
}

}  // namespace tsaudit::data
