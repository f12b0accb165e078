// Copyright 2026 The Snake Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "snake/matrix.hpp"

namespace snake {

enum class InitKind {
  kKaimingUniform,          // U(-sqrt(6/d), sqrt(6/d))
  kSnakeUniform,            // U(-sqrt(3/d), sqrt(3/d)): unit-variance pre-activations
  kSnakeUniformCorrected,   // SnakeUniform weights, Snake outputs divided by sigma_a
};

struct InitScheme {
  InitKind kind = InitKind::kSnakeUniform;

  static InitScheme kaiming() { return {InitKind::kKaimingUniform}; }
  static InitScheme snake_uniform() { return {InitKind::kSnakeUniform}; }
  static InitScheme snake_corrected() { return {InitKind::kSnakeUniformCorrected}; }
  // CLI names: kaiming | snake | snake_corrected.
  static InitScheme parse(std::string_view name);
  std::string name() const;

  // Half-width of the uniform support for fan-in d.
  double bound(std::size_t fan_in) const;
  bool corrects_variance() const noexcept { return kind == InitKind::kSnakeUniformCorrected; }

  friend bool operator==(const InitScheme&, const InitScheme&) = default;
};

// rows x cols weights with fan-in d = cols, deterministic in `seed`.
Matrix init_weights(const InitScheme& scheme, std::size_t rows, std::size_t cols,
                    std::uint64_t seed);

// Divides every element by sigma_a = sqrt(snake_variance(a)).
Matrix variance_correction(const Matrix& post_activation, double a);

}  // namespace snake
