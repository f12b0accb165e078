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

#include "snake/mlp.hpp"

#include <cmath>

#include "snake/errors.hpp"
#include "snake/random.hpp"

namespace snake {

InputNormalizer InputNormalizer::to_unit_interval(double lo, double hi, std::size_t dims) {
  if (!(hi > lo)) throw ParameterError("normalizer range must satisfy hi > lo");
  const double mid = 0.5 * (lo + hi);
  const double scale = 2.0 / (hi - lo);
  return {std::vector<double>(dims, mid), std::vector<double>(dims, scale)};
}

Matrix InputNormalizer::apply(const Matrix& x) const {
  if (x.cols() != shift.size())
    throw ShapeError("normalizer expects " + std::to_string(shift.size()) + " columns, got " +
                     x.shape_string());
  Matrix out = x;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = (x(r, c) - shift[c]) * scale[c];
  return out;
}

Mlp::Mlp(const MlpConfig& config)
    : activation_(config.activation),
      variance_corrected_(config.init.corrects_variance() && config.activation.is_snake()),
      per_neuron_a_(config.per_neuron_a && config.activation.is_learnable()) {
  if (config.widths.size() < 2) throw ContractError("an MLP needs at least two widths");
  for (std::size_t w : config.widths)
    if (w == 0) throw ContractError("MLP widths must be positive");
  const Rng root(config.seed);
  for (std::size_t i = 0; i + 1 < config.widths.size(); ++i) {
    const std::size_t in = config.widths[i];
    const std::size_t out = config.widths[i + 1];
    layers_.push_back({init_weights(config.init, out, in, root.split(i).next_u64()),
                       Matrix(1, out)});
  }
  if (activation_.is_learnable()) {
    for (std::size_t i = 0; i < num_hidden(); ++i)
      log_a_.emplace_back(1, per_neuron_a_ ? config.widths[i + 1] : 1,
                          std::log(activation_.param()));
  }
}

Mlp::Mlp(std::vector<DenseLayer> layers, Activation activation, bool variance_corrected,
         bool per_neuron_a)
    : layers_(std::move(layers)),
      activation_(activation),
      variance_corrected_(variance_corrected),
      per_neuron_a_(per_neuron_a && activation.is_learnable()) {
  if (variance_corrected_ && !activation_.is_snake())
    throw ContractError("variance correction requires a Snake activation");
  if (activation_.is_learnable()) {
    for (std::size_t i = 0; i < num_hidden(); ++i)
      log_a_.emplace_back(1, per_neuron_a_ ? layers_[i].weight.rows() : 1,
                          std::log(activation_.param()));
  }
  validate();
}

void Mlp::validate() const {
  if (layers_.empty()) throw ContractError("an MLP needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    if (l.bias.rows() != 1 || l.bias.cols() != l.weight.rows())
      throw ShapeError("layer " + std::to_string(i) + ": bias " + l.bias.shape_string() +
                       " does not match weight " + l.weight.shape_string());
    if (i > 0 && l.weight.cols() != layers_[i - 1].weight.rows())
      throw ShapeError("layer " + std::to_string(i) + ": input width " +
                       std::to_string(l.weight.cols()) + " does not chain with " +
                       std::to_string(layers_[i - 1].weight.rows()));
  }
  if (activation_.is_learnable()) {
    if (log_a_.size() != num_hidden())
      throw ShapeError("expected one log-frequency row per hidden layer");
    for (std::size_t i = 0; i < log_a_.size(); ++i) {
      const std::size_t want = per_neuron_a_ ? layers_[i].weight.rows() : 1;
      if (log_a_[i].rows() != 1 || log_a_[i].cols() != want)
        throw ShapeError("log-frequency row " + std::to_string(i) + " has shape " +
                         log_a_[i].shape_string());
    }
  } else if (!log_a_.empty()) {
    throw ContractError("log frequencies given for a non-learnable activation");
  }
}

std::vector<std::size_t> Mlp::widths() const {
  std::vector<std::size_t> w{input_dim()};
  for (const auto& l : layers_) w.push_back(l.weight.rows());
  return w;
}

double Mlp::frequency(std::size_t layer) const {
  if (!activation_.is_learnable()) return activation_.param();
  const Matrix& la = log_a_.at(layer);
  double s = 0.0;
  for (double v : la.data()) s += std::exp(v);
  return s / static_cast<double>(la.size());
}

void Mlp::set_normalizer(std::optional<InputNormalizer> n) {
  if (n && (n->shift.size() != input_dim() || n->scale.size() != input_dim()))
    throw ShapeError("normalizer dimension does not match the input width");
  normalizer_ = std::move(n);
}

const Matrix* Mlp::layer_log_a(std::size_t layer) const {
  return activation_.is_learnable() ? &log_a_[layer] : nullptr;
}

Matrix Mlp::check_input(const Matrix& x) const {
  if (x.cols() != input_dim())
    throw ShapeError("forward: expected " + std::to_string(input_dim()) +
                     " input columns, got " + x.shape_string());
  return normalizer_ ? normalizer_->apply(x) : x;
}

Matrix Mlp::forward(const Matrix& x) const {
  Matrix h = check_input(x);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    h = add_row_broadcast(matmul_transposed(h, layers_[i].weight), layers_[i].bias);
    if (i + 1 < layers_.size())
      h = apply_activation(h, activation_, layer_log_a(i), variance_corrected_);
  }
  return h;
}

double Mlp::forward_scalar(double x) const {
  if (input_dim() != 1 || output_dim() != 1)
    throw ShapeError("forward_scalar requires a 1 -> 1 network");
  return forward(Matrix(1, 1, x))(0, 0);
}

std::vector<Matrix> Mlp::hidden_activations(const Matrix& x) const {
  std::vector<Matrix> out;
  Matrix h = check_input(x);
  for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
    h = add_row_broadcast(matmul_transposed(h, layers_[i].weight), layers_[i].bias);
    h = apply_activation(h, activation_, layer_log_a(i), variance_corrected_);
    out.push_back(h);
  }
  return out;
}

Mlp::Binding Mlp::record(Tape& tape, NodeId x) const {
  if (tape.value(x).cols() != input_dim())
    throw ShapeError("record: expected " + std::to_string(input_dim()) +
                     " input columns, got " + tape.value(x).shape_string());
  Binding b;
  NodeId h = normalizer_ ? tape.input(normalizer_->apply(tape.value(x))) : x;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const NodeId w = tape.parameter(layers_[i].weight);
    const NodeId bias = tape.parameter(layers_[i].bias);
    b.weights.push_back(w);
    b.biases.push_back(bias);
    h = tape.add_bias(tape.matmul_transposed(h, w), bias);
    if (i + 1 < layers_.size()) {
      std::optional<NodeId> la;
      if (activation_.is_learnable()) {
        la = tape.parameter(log_a_[i]);
        b.log_a.push_back(*la);
      }
      h = tape.activate(h, activation_, la, variance_corrected_);
      b.hidden.push_back(h);
    }
  }
  b.output = h;
  return b;
}

std::vector<Matrix*> Mlp::parameters() {
  std::vector<Matrix*> out;
  for (auto& l : layers_) {
    out.push_back(&l.weight);
    out.push_back(&l.bias);
  }
  for (auto& la : log_a_) out.push_back(&la);
  return out;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
  for (const auto& la : log_a_) n += la.size();
  return n;
}

}  // namespace snake
