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

#include <string>
#include <vector>

#include <json.hpp>

#include "snake/experiments.hpp"
#include "snake/extrapolation.hpp"
#include "snake/fourier.hpp"

namespace snake {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

Json task_json(const SyntheticTask& task);
Json experiment_config_json(const ExperimentConfig& cfg);

Json comparison_json(const ComparisonReport& rep, const ExperimentConfig& cfg);
// x, then <label>_median, <label>_p5, <label>_p95 per activation.
std::string curves_csv(const ComparisonReport& rep);

Json sweep_json(const SweepReport& rep, const ExperimentConfig& cfg);
std::string sweep_curves_csv(const SweepReport& rep);

Json noise_sweep_json(const NoiseSweepReport& rep, const ExperimentConfig& cfg);
// noise_variance, activation, median_extrapolation_mse, diverged_runs.
std::string noise_sweep_csv(const NoiseSweepReport& rep);
Json trajectory_json(const SpectralTrajectory& tr, const ExperimentConfig& cfg);
// checkpoint, frequency_bin, frequency, magnitude.
std::string spectrum_csv(const SpectralTrajectory& tr);

struct RayRecord {
  RayProbeReport report;
  Asymptotics cls = Asymptotics::kUndetermined;
};
Json extrapolation_json(const std::vector<RayRecord>& rays);

Json fourier_json(const FourierSpec& spec, double a, double max_net_vs_partial,
                  double max_net_vs_target);

// Fixed-format rendering so reports compare byte for byte.
std::string dump(const Json& j);

}  // namespace snake
