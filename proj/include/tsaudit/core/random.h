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

#ifndef TSAUDIT_CORE_RANDOM_H_
#define TSAUDIT_CORE_RANDOM_H_

#include <cstdint>
#include <random>
#include "absl/strings/string_view.h"

namespace tsaudit {

// Mixes a parent seed with a stream tag (splitmix64 finalizer). Every seed in
// an experiment is derived from its master seed through this function.
std::uint64_t DeriveSeed(std::uint64_t parent, std::uint64_t tag);
std::uint64_t DeriveSeed(std::uint64_t parent, absl::string_view tag);

// Seeded generator whose draws are identical across standard libraries: the
// distributions are computed from raw engine bits rather than <random>'s
// implementation-defined adaptors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextBits() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t UniformIndex(std::uint64_t n);
  double Normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsaudit

#endif  // TSAUDIT_CORE_RANDOM_H_
