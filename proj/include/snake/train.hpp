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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "snake/matrix.hpp"
#include "snake/mlp.hpp"

namespace snake {

struct SgdConfig {
  double lr = 1e-2;
  double momentum = 0.0;
  double weight_decay = 0.0;
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct TrainConfig {
  std::variant<SgdConfig, AdamConfig> optimizer = AdamConfig{};
  // 0 means full batch.
  std::size_t batch_size = 0;
  std::size_t steps = 1000;
  // Piecewise-constant learning rate: from step s onwards use lr. Entries
  // must be sorted by step; before the first entry the optimizer's lr holds.
  std::vector<std::pair<std::size_t, double>> schedule;
  // Mini-batch order.
  std::uint64_t seed = 0;

  double base_lr() const;
  double lr_at(std::size_t step) const;
  void validate() const;
};

struct TrainResult {
  Mlp net;
  // Training MSE of the batch seen at each step, before that step's update.
  std::vector<double> loss;
};

// Called with the step index (0 = before any update, `steps` = final) and
// the current network.
using CheckpointFn = std::function<void(std::size_t step, const Mlp& net)>;

// Minimizes mean squared error of net(X) against Y. Throws TrainingDiverged
// when the loss becomes non-finite.
TrainResult train(Mlp net, const Matrix& x, const Matrix& y, const TrainConfig& cfg,
                  std::size_t checkpoint_stride = 0, const CheckpointFn& on_checkpoint = {});

// Gradients of mean((net(X) - Y)^2), one per entry of net.parameters() and
// in the same order.
std::vector<Matrix> loss_gradients(const Mlp& net, const Matrix& x, const Matrix& y);

// Mean squared error of net(X) against Y.
double evaluate_mse(const Mlp& net, const Matrix& x, const Matrix& y);

// Writes "step,mse" rows.
std::string loss_trace_csv(const std::vector<double>& loss);

}  // namespace snake
