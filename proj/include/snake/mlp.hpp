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
#include <vector>

#include "snake/activation.hpp"
#include "snake/init.hpp"
#include "snake/matrix.hpp"
#include "snake/tape.hpp"

namespace snake {

// Architecture of f(x) = W_h s(... s(W_1 x + b_1) ...) + b_h with widths
// d_1 .. d_{h+1}. The last layer is affine; s is applied between layers only.
struct MlpConfig {
  std::vector<std::size_t> widths;
  Activation activation = Activation::snake(1.0);
  InitScheme init = InitScheme::snake_uniform();
  std::uint64_t seed = 0;
  // Learnable Snake only: one frequency per neuron instead of per layer.
  bool per_neuron_a = false;
};

// Fixed affine map applied to every input row before the first layer:
// x'_j = (x_j - shift_j) * scale_j.
struct InputNormalizer {
  std::vector<double> shift;
  std::vector<double> scale;

  // Maps [lo, hi] (per input) onto [-1, 1].
  static InputNormalizer to_unit_interval(double lo, double hi, std::size_t dims = 1);
  Matrix apply(const Matrix& x) const;
  friend bool operator==(const InputNormalizer&, const InputNormalizer&) = default;
};

struct DenseLayer {
  Matrix weight;  // out x in
  Matrix bias;    // 1 x out
  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

class Mlp {
 public:
  // Parameters registered on a tape by record().
  struct Binding {
    std::vector<NodeId> weights;
    std::vector<NodeId> biases;
    std::vector<NodeId> log_a;
    std::vector<NodeId> hidden;  // post-activation node per hidden layer
    NodeId output = 0;
  };

  Mlp() = default;
  // Random weights drawn per `config.init`, zero biases.
  explicit Mlp(const MlpConfig& config);
  // Explicit weights. For learnable Snake, log frequencies start at
  // log(activation.param()).
  Mlp(std::vector<DenseLayer> layers, Activation activation, bool variance_corrected = false,
      bool per_neuron_a = false);

  std::size_t num_layers() const noexcept { return layers_.size(); }
  std::size_t num_hidden() const noexcept { return layers_.empty() ? 0 : layers_.size() - 1; }
  std::size_t input_dim() const { return layers_.front().weight.cols(); }
  std::size_t output_dim() const { return layers_.back().weight.rows(); }
  std::vector<std::size_t> widths() const;

  const Activation& activation() const noexcept { return activation_; }
  bool variance_corrected() const noexcept { return variance_corrected_; }
  bool per_neuron_a() const noexcept { return per_neuron_a_; }

  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& layers() noexcept { return layers_; }
  // Learned log-frequencies, one 1 x 1 or 1 x width row per hidden layer.
  // Empty unless the activation is learnable.
  const std::vector<Matrix>& log_a() const noexcept { return log_a_; }
  std::vector<Matrix>& log_a() noexcept { return log_a_; }
  // Current Snake frequency of hidden layer `layer` (mean over neurons when
  // per-neuron).
  double frequency(std::size_t layer) const;

  const std::optional<InputNormalizer>& normalizer() const noexcept { return normalizer_; }
  void set_normalizer(std::optional<InputNormalizer> n);

  // Batch forward: x is n x d_1, result n x d_{h+1}.
  Matrix forward(const Matrix& x) const;
  double forward_scalar(double x) const;
  // Post-activation values of every hidden layer.
  std::vector<Matrix> hidden_activations(const Matrix& x) const;

  // Records the forward pass of `x` (already on the tape) and returns the
  // nodes of every parameter.
  Binding record(Tape& tape, NodeId x) const;

  // Mutable views over every trainable matrix, in a fixed order:
  // W_1, b_1, ..., W_h, b_h, then log a per hidden layer.
  std::vector<Matrix*> parameters();
  std::size_t parameter_count() const;

  friend bool operator==(const Mlp&, const Mlp&) = default;

 private:
  void validate() const;
  const Matrix* layer_log_a(std::size_t layer) const;
  Matrix check_input(const Matrix& x) const;

  std::vector<DenseLayer> layers_;
  std::vector<Matrix> log_a_;
  Activation activation_ = Activation::snake(1.0);
  bool variance_corrected_ = false;
  bool per_neuron_a_ = false;
  std::optional<InputNormalizer> normalizer_;
};

}  // namespace snake
