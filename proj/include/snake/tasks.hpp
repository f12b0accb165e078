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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snake/extrapolation.hpp"
#include "snake/matrix.hpp"

namespace snake {

enum class TargetKind {
  kLinear,     // x
  kTanh,       // tanh(x)
  kSin,        // sin(x)
  kSquare,     // x^2
  kRect,       // +1 where sin(x) >= 0, else -1
  kSinMix,     // sin(x) + sin(4x)/4
  kCosMix,     // cos(t/2) + 2 sin(t/3)
  kNoisySin,   // sin(0.1 x), noisy training samples at x = 1..T
};

// CLI names: linear, tanh, sin, x2, rect, sin_mix, cos_mix, noisy_sin.
TargetKind parse_target(std::string_view name);
std::string target_name(TargetKind kind);
double target_value(TargetKind kind, double x);
// Fundamental period, if the target is periodic.
std::optional<double> target_period(TargetKind kind);
// Angular frequencies present in the target (empty if not periodic).
std::vector<double> target_frequencies(TargetKind kind);

struct SyntheticTask {
  std::string name;
  TargetKind target = TargetKind::kSin;
  double train_lo = -5.0;
  double train_hi = 5.0;
  // Held-out interior interval; empty when gap_lo >= gap_hi.
  double gap_lo = -1.0;
  double gap_hi = 1.0;
  // Extrapolation ranges are [train_lo - reach, train_lo] and
  // [train_hi, train_hi + reach].
  double reach = 5.0;
  std::size_t samples = 200;
  double noise_variance = 0.0;
  std::size_t test_points_per_range = 200;
  std::uint64_t seed = 0;

  // Defaults per target: [-5, 5] minus [-1, 1] for most targets;
  // noisy_sin trains on x = 1..samples and tests on samples+1..3 samples.
  static SyntheticTask preset(TargetKind kind);
  bool has_gap() const noexcept { return gap_lo < gap_hi; }
  double evaluate(double x) const { return target_value(target, x); }
  // Gap (if any), left and right ranges. noisy_sin has a single "right" range.
  std::vector<NamedRange> test_ranges() const;
  void validate() const;
};

struct Dataset {
  Matrix x_train, y_train;
  Matrix x_test, y_test;  // noise-free, ranges concatenated in test_ranges() order
};

Dataset generate(const SyntheticTask& task);

}  // namespace snake
