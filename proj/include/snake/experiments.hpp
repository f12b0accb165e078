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
#include <optional>
#include <string>
#include <vector>

#include "snake/activation.hpp"
#include "snake/extrapolation.hpp"
#include "snake/init.hpp"
#include "snake/mlp.hpp"
#include "snake/tasks.hpp"
#include "snake/train.hpp"

namespace snake {

// How each run builds and trains its network.
struct ExperimentConfig {
  TrainConfig train;
  std::vector<std::size_t> hidden = {512};
  // Unset: Kaiming for the ReLU family, the Snake uniform scheme otherwise.
  std::optional<InitScheme> init;
  // Map the training range onto [-1, 1] inside the network.
  bool rescale_inputs = true;
  std::size_t runs = 21;
  std::uint64_t seed = 0;
  // Worker threads for independent runs; 0 = hardware concurrency.
  std::size_t threads = 0;
  // Uniform grid over [train_lo - reach, train_hi + reach] for prediction curves.
  std::size_t curve_points = 401;

  void validate() const;
};

InitScheme default_init(const Activation& act);
// Untrained network for `task` under `cfg`, with the given init seed.
Mlp make_network(const SyntheticTask& task, const Activation& act, const ExperimentConfig& cfg,
                 std::uint64_t seed);
// Seed of run r.
std::uint64_t run_seed(std::uint64_t base, std::size_t run);

struct RunRecord {
  std::uint64_t seed = 0;
  bool diverged = false;
  std::size_t diverged_step = 0;
  double train_mse = 0.0;
  std::vector<RangeMse> range_mse;  // test ranges, then "extrapolation" (left and right pooled)
  double extrapolation_mse = 0.0;
  std::vector<double> curve;        // prediction on the curve grid
  std::optional<Mlp> net;           // trained net (not part of reports)
};

struct ActivationSummary {
  std::string label;
  Activation activation;
  std::vector<RunRecord> runs;
  std::size_t diverged = 0;
  // Pointwise over non-diverged runs.
  std::vector<double> median, p5, p95;
  std::vector<RangeMse> median_range_mse;
  double median_extrapolation_mse = 0.0;
};

struct ComparisonReport {
  SyntheticTask task;
  std::vector<double> curve_x;
  std::vector<ActivationSummary> activations;
};

// Trains cfg.runs networks per activation on generate(task) and summarizes
// them. Diverged runs are recorded and excluded from bands and medians.
ComparisonReport run_comparison(const SyntheticTask& task, const std::vector<Activation>& acts,
                                const ExperimentConfig& cfg);

// Linear-interpolated percentile (p in [0, 100]) of a non-empty sample.
double percentile(std::vector<double> v, double p);

// Uniform grid for spectra: 4096 points over 4 target periods when known,
// else over 4x the training span, starting at `start`.
struct SpectrumGrid {
  double start = 0.0;
  double spacing = 0.0;
  std::size_t points = 4096;
  std::vector<double> x() const;
  double span() const { return spacing * static_cast<double>(points); }
};
SpectrumGrid spectrum_grid(const SyntheticTask& task, double start);

// Detrended magnitude spectrum of net over the grid.
std::vector<double> model_spectrum(const Mlp& net, const SpectrumGrid& grid);

struct SweepEntry {
  double a = 0.0;
  ActivationSummary summary;
  std::vector<double> dominant_frequency;  // per non-diverged run, cycles per unit
  double median_dominant_frequency = 0.0;
  // Runs whose dominant frequency is within one bin of the target's
  // fundamental (target periodic only).
  std::size_t recovered = 0;
};

struct SweepReport {
  SyntheticTask task;
  SpectrumGrid grid;  // right extrapolation grid starting at train_hi
  std::optional<double> target_frequency;  // cycles per unit
  std::vector<double> curve_x;
  std::vector<SweepEntry> entries;
};

// Snake(a) for each a; fixed (non-learnable) frequency.
SweepReport a_sweep(const SyntheticTask& task, const std::vector<double>& a_values,
                    const ExperimentConfig& cfg);

// The same comparison repeated for several training-noise variances.
struct NoiseSweepEntry {
  double noise_variance = 0.0;
  ComparisonReport report;
};

struct NoiseSweepReport {
  SyntheticTask task;
  std::vector<NoiseSweepEntry> entries;
};

// Runs run_comparison on `task` with each noise variance in turn; the
// training inputs are shared, only the noise level changes.
NoiseSweepReport noise_sweep(const SyntheticTask& task, const std::vector<Activation>& acts,
                             const std::vector<double>& variances, const ExperimentConfig& cfg);

struct SpectrumCheckpoint {
  std::size_t step = 0;
  double train_mse = 0.0;
  std::vector<double> magnitude;
  // Highest frequency (cycles per unit) above threshold, 0 if none.
  double highest_active_frequency = 0.0;
};

struct FrequencyCrossing {
  double angular_frequency = 0.0;
  std::size_t bin = 0;
  // First checkpoint step at which the bin exceeds the threshold.
  std::optional<std::size_t> step;
};

struct SpectralTrajectory {
  SyntheticTask task;
  std::uint64_t seed = 0;
  SpectrumGrid grid;
  // 10% of the maximum (bins >= 1) of the target's own detrended spectrum.
  double threshold = 0.0;
  std::vector<SpectrumCheckpoint> checkpoints;
  std::vector<FrequencyCrossing> crossings;
};

// Trains one Snake-family net (seed `seed`) and records the detrended output
// spectrum over a grid of 4 target periods centred on the training range
// every `stride` steps.
SpectralTrajectory spectral_trajectory(const SyntheticTask& task, const Activation& act,
                                       const ExperimentConfig& cfg, std::size_t stride,
                                       std::uint64_t seed);

}  // namespace snake
