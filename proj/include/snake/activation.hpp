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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace snake {

// Snake_a(x) = x + sin^2(a x) / a. Throws ParameterError unless a > 0.
double snake(double x, double a);
// d/dx Snake_a(x) = 1 + sin(2 a x), always in [0, 2].
double snake_deriv(double x, double a);
// d/da Snake_a(x) = x sin(2 a x) / a - sin^2(a x) / a^2.
double snake_deriv_a(double x, double a);

// Variance of Snake_a(x) for x ~ N(0, 1):
//   1 + (1 + exp(-8a^2) - 2 exp(-4a^2)) / (8a^2).
double snake_variance(double a);
// d/da snake_variance(a).
double snake_variance_deriv(double a);

// Argmax of snake_variance ( ~0.56045 ), located by golden-section search.
double snake_variance_argmax();

enum class ActivationKind {
  kReLU,
  kLeakyReLU,
  kTanh,
  kSwish,
  kSin,
  kXPlusSin,
  kXPlusCos,
  kSnake,
  kSnakeLearnable,
};

// One member of the activation family. `param` is the LeakyReLU negative
// slope, or the frequency a (the initial a for the learnable variant).
class Activation {
 public:
  static constexpr double kDefaultLeakySlope = 0.01;

  Activation() = default;
  static Activation relu() { return Activation(ActivationKind::kReLU, 0.0); }
  static Activation leaky_relu(double slope = kDefaultLeakySlope);
  static Activation tanh() { return Activation(ActivationKind::kTanh, 0.0); }
  static Activation swish() { return Activation(ActivationKind::kSwish, 0.0); }
  static Activation sin() { return Activation(ActivationKind::kSin, 0.0); }
  static Activation x_plus_sin() { return Activation(ActivationKind::kXPlusSin, 0.0); }
  static Activation x_plus_cos() { return Activation(ActivationKind::kXPlusCos, 0.0); }
  static Activation snake(double a);
  static Activation snake_learnable(double initial_a);

  // Builds from a CLI name (case-insensitive). `param`, if given, overrides
  // the kind's default parameter (slope 0.01, a = 1).
  static Activation parse(std::string_view name, std::optional<double> param = {});
  // Inverse of ActivationKind <-> integer tag used by the model format.
  static Activation from_tag(int tag, double param);

  ActivationKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  int tag() const noexcept { return static_cast<int>(kind_); }
  std::string name() const;

  bool is_snake() const noexcept {
    return kind_ == ActivationKind::kSnake || kind_ == ActivationKind::kSnakeLearnable;
  }
  bool is_learnable() const noexcept { return kind_ == ActivationKind::kSnakeLearnable; }
  // Infinitely differentiable at 0 (everything except the ReLU family).
  bool is_analytic() const noexcept {
    return kind_ != ActivationKind::kReLU && kind_ != ActivationKind::kLeakyReLU;
  }

  // Evaluate with the stored parameter.
  double operator()(double x) const { return eval(x, param_); }
  double deriv(double x) const { return deriv(x, param_); }

  // Evaluate with an explicit frequency (used for learned a). For non-Snake
  // kinds the frequency argument is ignored. No validation: callers pass
  // a > 0.
  double eval(double x, double a) const noexcept;
  double deriv(double x, double a) const noexcept;
  // d/da; zero for kinds without a frequency.
  double deriv_a(double x, double a) const noexcept;
  // Value together with d/dx and (when `da` is non-null) d/da, sharing the
  // trigonometric evaluations.
  double eval_with_derivs(double x, double a, double* dx, double* da) const noexcept;

  friend bool operator==(const Activation&, const Activation&) = default;

 private:
  Activation(ActivationKind kind, double param) : kind_(kind), param_(param) {}

  ActivationKind kind_ = ActivationKind::kReLU;
  double param_ = 0.0;
};

// Evaluates `act` over a row-major block with `cols` columns: element i uses
// frequency a[i % cols] and output scale scale[i % cols]. `dx` and `da`
// receive the scaled derivatives when non-empty. Values are bit-identical
// whether or not derivatives are requested.
void evaluate_block(const Activation& act, std::span<const double> x, std::size_t cols,
                    std::span<const double> a, std::span<const double> scale,
                    std::span<double> y, std::span<double> dx = {}, std::span<double> da = {});

// Maclaurin coefficients c_0..c_order of the activation, estimated with
// Richardson-extrapolated central differences. Throws ContractError for
// non-analytic kinds.
std::vector<double> taylor_check(const Activation& act, int order);

}  // namespace snake
