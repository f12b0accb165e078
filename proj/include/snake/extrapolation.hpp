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
#include <span>
#include <string>
#include <vector>

#include "snake/matrix.hpp"
#include "snake/mlp.hpp"

namespace snake {

// Evidence about f(z u) as z grows along a fixed unit direction u.
struct RayProbeReport {
  std::vector<double> direction;   // u, unit norm
  std::vector<double> z;           // geometric probe grid
  Matrix outputs;                  // f(z_i u), one row per probe
  // Least-squares affine fit f(z u) ~ slope * z + intercept over the
  // largest-z half of the grid (per output coordinate).
  std::vector<double> slope;
  std::vector<double> intercept;
  // Max deviation from that fit on the top half, relative to
  // max(1, ||f(z_max u)||).
  double affine_residual = 0.0;
  // f(z_max u) and the max deviation ||f(z u) - f(z_max u)|| over the top
  // half, relative to max(1, ||f(z_max u)||).
  std::vector<double> limit;
  double constant_deviation = 0.0;

  // Uniformly spaced window ending at z_max, used to look for a periodic
  // residual: spacing, absolute max deviation from the window's affine fit,
  // and the relative size of that deviation.
  double window_spacing = 0.0;
  double periodic_amplitude = 0.0;
  double window_relative_residual = 0.0;
  // Magnitude spectrum of the first output's window residual (bins 0..N/2).
  std::vector<double> window_spectrum;
  // Dominant frequency of that residual in cycles per unit z (0 if none).
  double dominant_frequency = 0.0;
  // Peak spectral magnitude over the median magnitude (bins >= 1).
  double peak_to_median = 0.0;
};

enum class Asymptotics { kAffine, kConstant, kPeriodicResidual, kUndetermined };
std::string to_string(Asymptotics a);

// Geometric grid base^lo, base^(lo+1), ..., base^hi.
std::vector<double> geometric_grid(double base, int lo, int hi);

// Probes `net` along u (normalized internally; must be non-zero and match
// the input width). The grid must be positive, strictly increasing and hold
// at least 8 points.
RayProbeReport probe_ray(const Mlp& net, std::span<const double> u,
                         std::span<const double> z_grid);

// Classification thresholds:
//   Constant: ||slope|| (relative) < 1e-10 and constant deviation < 1e-8.
//   Periodic: window residual well above round-off (relative > 1e-12) and a
//             spectral peak >= 5x the median magnitude.
//   Affine:   affine residual < 1e-9.
Asymptotics classify_asymptotics(const RayProbeReport& report);

// For ReLU-family nets: the affine map the activation pattern at z u fixes,
// computed layer by layer (slope W_u u and intercept b_u). Independent of
// the curve fit in probe_ray.
struct PatternAffine {
  std::vector<double> slope;
  std::vector<double> intercept;
};
PatternAffine relu_pattern_affine(const Mlp& net, std::span<const double> u, double z);

// Named evaluation interval for 1-D regression.
struct NamedRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

struct RangeMse {
  std::string name;
  double mse = 0.0;
};

// MSE of a 1 -> 1 net against `target` on `points_per_range` uniform points
// of each range.
std::vector<RangeMse> extrapolation_mse(const Mlp& net, const std::function<double(double)>& target,
                                        std::span<const NamedRange> ranges,
                                        std::size_t points_per_range = 1000);

// Gap, left and right extrapolation ranges for training on [lo, hi] minus
// [gap_lo, gap_hi], extrapolating by `reach` on each side.
std::vector<NamedRange> standard_ranges(double lo, double hi, double gap_lo, double gap_hi,
                                        double reach);

// Random net for ray probes: widths in -> hidden x (depth-1) -> out (depth
// weight layers), Kaiming-uniform weights and Uniform(-1, 1) biases.
Mlp random_probe_net(const Activation& act, std::size_t depth, std::size_t in, std::size_t hidden,
                     std::size_t out, std::uint64_t seed);

// Random unit vector of dimension d.
std::vector<double> random_direction(std::size_t d, std::uint64_t seed);

}  // namespace snake
