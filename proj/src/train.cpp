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

#include "snake/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "snake/errors.hpp"
#include "snake/random.hpp"
#include "snake/tape.hpp"

namespace snake {

double TrainConfig::base_lr() const {
  return std::visit([](const auto& o) { return o.lr; }, optimizer);
}

double TrainConfig::lr_at(std::size_t step) const {
  double lr = base_lr();
  for (const auto& [from, value] : schedule) {
    if (step >= from) lr = value;
  }
  return lr;
}

void TrainConfig::validate() const {
  if (steps == 0) throw ContractError("step budget must be at least 1");
  if (!(base_lr() > 0.0)) throw ParameterError("learning rate must be positive");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i].second > 0.0)) throw ParameterError("scheduled learning rate must be positive");
    if (i > 0 && schedule[i].first < schedule[i - 1].first)
      throw ContractError("learning-rate schedule must be sorted by step");
  }
  if (const auto* adam = std::get_if<AdamConfig>(&optimizer)) {
    if (adam->beta1 < 0.0 || adam->beta1 >= 1.0 || adam->beta2 < 0.0 || adam->beta2 >= 1.0)
      throw ParameterError("Adam betas must lie in [0, 1)");
  }
}

namespace {

Matrix gather_rows(const Matrix& m, std::span<const std::size_t> idx) {
  Matrix out(idx.size(), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) out(i, c) = m(idx[i], c);
  return out;
}

class Optimizer {
 public:
  Optimizer(const TrainConfig& cfg, const std::vector<Matrix*>& params,
            std::size_t num_weight_matrices)
      : cfg_(cfg), decayed_(num_weight_matrices) {
    for (const Matrix* p : params) {
      first_.emplace_back(p->rows(), p->cols());
      second_.emplace_back(p->rows(), p->cols());
    }
  }

  // `grads[i]` matches `params[i]`.
  void step(const std::vector<Matrix*>& params, const std::vector<const Matrix*>& grads,
            double lr) {
    ++t_;
    if (const auto* sgd = std::get_if<SgdConfig>(&cfg_.optimizer)) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        auto p = params[i]->data();
        auto g = grads[i]->data();
        auto v = first_[i].data();
        // Weight decay applies to layer weights and biases, never to log a.
        const double wd = i < decayed_ ? sgd->weight_decay : 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) {
          const double gk = g[k] + wd * p[k];
          v[k] = sgd->momentum * v[k] + gk;
          p[k] -= lr * v[k];
        }
      }
      return;
    }
    const auto& adam = std::get<AdamConfig>(cfg_.optimizer);
    const double c1 = 1.0 - std::pow(adam.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(adam.beta2, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto p = params[i]->data();
      auto g = grads[i]->data();
      auto m = first_[i].data();
      auto v = second_[i].data();
      for (std::size_t k = 0; k < p.size(); ++k) {
        m[k] = adam.beta1 * m[k] + (1.0 - adam.beta1) * g[k];
        v[k] = adam.beta2 * v[k] + (1.0 - adam.beta2) * g[k] * g[k];
        p[k] -= lr * (m[k] / c1) / (std::sqrt(v[k] / c2) + adam.eps);
      }
    }
  }

 private:
  const TrainConfig& cfg_;
  std::size_t decayed_;
  std::size_t t_ = 0;
  std::vector<Matrix> first_;
  std::vector<Matrix> second_;
};

}  // namespace

TrainResult train(Mlp net, const Matrix& x, const Matrix& y, const TrainConfig& cfg,
                  std::size_t checkpoint_stride, const CheckpointFn& on_checkpoint) {
  cfg.validate();
  if (x.rows() != y.rows())
    throw ShapeError("train: X has " + std::to_string(x.rows()) + " rows but Y has " +
                     std::to_string(y.rows()));
  if (y.cols() != net.output_dim())
    throw ShapeError("train: Y has " + std::to_string(y.cols()) + " columns, network outputs " +
                     std::to_string(net.output_dim()));

  const std::size_t n = x.rows();
  const bool full_batch = cfg.batch_size == 0 || cfg.batch_size >= n;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed);
  std::size_t cursor = n;

  auto params = net.parameters();
  Optimizer opt(cfg, params, 2 * net.num_layers());
  TrainResult result;
  result.loss.reserve(cfg.steps);

  if (on_checkpoint) on_checkpoint(0, net);
  for (std::size_t step = 0; step < cfg.steps; ++step) {
    Tape tape;
    NodeId xin, yin;
    if (full_batch) {
      xin = tape.input(x);
      yin = tape.input(y);
    } else {
      if (cursor + cfg.batch_size > n) {
        // Fisher-Yates reshuffle at each epoch boundary.
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        cursor = 0;
      }
      std::span<const std::size_t> idx(order.data() + cursor, cfg.batch_size);
      cursor += cfg.batch_size;
      xin = tape.input(gather_rows(x, idx));
      yin = tape.input(gather_rows(y, idx));
    }
    const auto binding = net.record(tape, xin);
    const NodeId loss = tape.mean_square_error(binding.output, yin);
    const double loss_value = tape.value(loss)(0, 0);
    if (!std::isfinite(loss_value))
      throw TrainingDiverged(step, "training diverged at step " + std::to_string(step));
    result.loss.push_back(loss_value);

    const auto grads = tape.backward(loss);
    std::vector<const Matrix*> ordered;
    ordered.reserve(params.size());
    for (std::size_t i = 0; i < net.num_layers(); ++i) {
      ordered.push_back(&grads.at(binding.weights[i]));
      ordered.push_back(&grads.at(binding.biases[i]));
    }
    for (NodeId id : binding.log_a) ordered.push_back(&grads.at(id));
    opt.step(params, ordered, cfg.lr_at(step));

    if (on_checkpoint && checkpoint_stride > 0 && (step + 1) % checkpoint_stride == 0 &&
        step + 1 < cfg.steps)
      on_checkpoint(step + 1, net);
  }
  if (on_checkpoint) on_checkpoint(cfg.steps, net);
  result.net = std::move(net);
  return result;
}

std::vector<Matrix> loss_gradients(const Mlp& net, const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || y.cols() != net.output_dim())
    throw ShapeError("loss_gradients: data shapes do not match the network");
  Tape tape;
  const auto binding = net.record(tape, tape.input(x));
  const auto grads = tape.backward(tape.mean_square_error(binding.output, tape.input(y)));
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < net.num_layers(); ++i) {
    out.push_back(grads.at(binding.weights[i]));
    out.push_back(grads.at(binding.biases[i]));
  }
  for (NodeId id : binding.log_a) out.push_back(grads.at(id));
  return out;
}

double evaluate_mse(const Mlp& net, const Matrix& x, const Matrix& y) {
  const Matrix pred = net.forward(x);
  if (!pred.same_shape(y)) throw ShapeError("evaluate_mse: prediction/target shape mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = pred.data()[i] - y.data()[i];
    acc += d * d;
  }
  return acc / static_cast<double>(y.size());
}

std::string loss_trace_csv(const std::vector<double>& loss) {
  std::ostringstream os;
  os.precision(17);
  os << "step,mse\n";
  for (std::size_t i = 0; i < loss.size(); ++i) os << i << ',' << loss[i] << '\n';
  return os.str();
}

}  // namespace snake
