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

#include "snake/activation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "snake/errors.hpp"

namespace snake {

namespace {

void require_frequency(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ParameterError("Snake frequency a must be positive and finite, got " +
                         std::to_string(a));
  }
}

// Overflow-free logistic function.
double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double snake_unchecked(double x, double a) noexcept {
  const double s = std::sin(a * x);
  return x + s * s / a;
}

double snake_deriv_a_unchecked(double x, double a) noexcept {
  const double s = std::sin(a * x);
  return x * std::sin(2.0 * a * x) / a - s * s / (a * a);
}

}  // namespace

double snake(double x, double a) {
  require_frequency(a);
  return snake_unchecked(x, a);
}

double snake_deriv(double x, double a) {
  require_frequency(a);
  return 1.0 + std::sin(2.0 * a * x);
}

double snake_deriv_a(double x, double a) {
  require_frequency(a);
  return snake_deriv_a_unchecked(x, a);
}

double snake_variance(double a) {
  require_frequency(a);
  const double a2 = a * a;
  // 1 + e^{-8a^2} - 2e^{-4a^2} = (1 - e^{-4a^2})^2, which avoids cancellation
  // for small a.
  const double t = -std::expm1(-4.0 * a2);
  return 1.0 + t * t / (8.0 * a2);
}

double snake_variance_deriv(double a) {
  require_frequency(a);
  const double a2 = a * a;
  const double t = -std::expm1(-4.0 * a2);
  const double dt = 8.0 * a * std::exp(-4.0 * a2);
  // d/da [t^2 / (8 a^2)]
  return (2.0 * t * dt) / (8.0 * a2) - t * t / (4.0 * a2 * a);
}

double snake_variance_argmax() {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.1, hi = 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = snake_variance(x1), f2 = snake_variance(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = snake_variance(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = snake_variance(x1);
    }
  }
  return 0.5 * (lo + hi);
}

Activation Activation::leaky_relu(double slope) {
  if (!std::isfinite(slope) || slope < 0.0 || slope >= 1.0)
    throw ParameterError("LeakyReLU slope must lie in [0, 1)");
  return Activation(ActivationKind::kLeakyReLU, slope);
}

Activation Activation::snake(double a) {
  require_frequency(a);
  return Activation(ActivationKind::kSnake, a);
}

Activation Activation::snake_learnable(double initial_a) {
  require_frequency(initial_a);
  return Activation(ActivationKind::kSnakeLearnable, initial_a);
}

Activation Activation::parse(std::string_view name, std::optional<double> param) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (key == "relu") return relu();
  if (key == "leaky_relu") return leaky_relu(param.value_or(kDefaultLeakySlope));
  if (key == "tanh") return tanh();
  if (key == "swish") return swish();
  if (key == "sin") return sin();
  if (key == "x_plus_sin") return x_plus_sin();
  if (key == "x_plus_cos") return x_plus_cos();
  if (key == "snake") return snake(param.value_or(1.0));
  if (key == "snake_learnable") return snake_learnable(param.value_or(1.0));
  throw ParameterError("unknown activation '" + std::string(name) + "'");
}

Activation Activation::from_tag(int tag, double param) {
  switch (static_cast<ActivationKind>(tag)) {
    case ActivationKind::kReLU: return relu();
    case ActivationKind::kLeakyReLU: return leaky_relu(param);
    case ActivationKind::kTanh: return tanh();
    case ActivationKind::kSwish: return swish();
    case ActivationKind::kSin: return sin();
    case ActivationKind::kXPlusSin: return x_plus_sin();
    case ActivationKind::kXPlusCos: return x_plus_cos();
    case ActivationKind::kSnake: return snake(param);
    case ActivationKind::kSnakeLearnable: return snake_learnable(param);
  }
  throw FormatError("unknown activation tag " + std::to_string(tag));
}

std::string Activation::name() const {
  switch (kind_) {
    case ActivationKind::kReLU: return "relu";
    case ActivationKind::kLeakyReLU: return "leaky_relu";
    case ActivationKind::kTanh: return "tanh";
    case ActivationKind::kSwish: return "swish";
    case ActivationKind::kSin: return "sin";
    case ActivationKind::kXPlusSin: return "x_plus_sin";
    case ActivationKind::kXPlusCos: return "x_plus_cos";
    case ActivationKind::kSnake: return "snake";
    case ActivationKind::kSnakeLearnable: return "snake_learnable";
  }
  return "unknown";
}

double Activation::eval(double x, double a) const noexcept {
  switch (kind_) {
    case ActivationKind::kReLU: return x > 0.0 ? x : 0.0;
    case ActivationKind::kLeakyReLU: return x > 0.0 ? x : param_ * x;
    case ActivationKind::kTanh: return std::tanh(x);
    case ActivationKind::kSwish: return x * sigmoid(x);
    case ActivationKind::kSin: return std::sin(x);
    case ActivationKind::kXPlusSin: return x + std::sin(x);
    case ActivationKind::kXPlusCos: return x + std::cos(x);
    case ActivationKind::kSnake:
    case ActivationKind::kSnakeLearnable: return snake_unchecked(x, a);
  }
  return 0.0;
}

double Activation::deriv(double x, double a) const noexcept {
  switch (kind_) {
    case ActivationKind::kReLU: return x > 0.0 ? 1.0 : 0.0;
    case ActivationKind::kLeakyReLU: return x > 0.0 ? 1.0 : param_;
    case ActivationKind::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case ActivationKind::kSwish: {
      const double s = sigmoid(x);
      return s + x * s * (1.0 - s);
    }
    case ActivationKind::kSin: return std::cos(x);
    case ActivationKind::kXPlusSin: return 1.0 + std::cos(x);
    case ActivationKind::kXPlusCos: return 1.0 - std::sin(x);
    case ActivationKind::kSnake:
    case ActivationKind::kSnakeLearnable: return 1.0 + std::sin(2.0 * a * x);
  }
  return 0.0;
}

double Activation::deriv_a(double x, double a) const noexcept {
  return is_snake() ? snake_deriv_a_unchecked(x, a) : 0.0;
}

double Activation::eval_with_derivs(double x, double a, double* dx,
                                    double* da) const noexcept {
  if (!is_snake()) {
    if (da) *da = 0.0;
    *dx = deriv(x, a);
    return eval(x, a);
  }
  const double s = std::sin(a * x);
  const double c = std::cos(a * x);
  *dx = 1.0 + 2.0 * s * c;
  if (da) *da = x * 2.0 * s * c / a - s * s / (a * a);
  return x + s * s / a;
}

namespace {

// Runs `kernel(x, a, y, dx, da)` over the block; WantDx/WantDa select which
// derivative outputs are written.
template <bool WantDx, bool WantDa, typename Kernel>
void run_block(Kernel kernel, std::span<const double> x, std::size_t cols,
               std::span<const double> a, std::span<const double> scale, std::span<double> y,
               std::span<double> dx, std::span<double> da) {
  const std::size_t rows = x.size() / cols;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * cols;
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t i = base + c;
      double v, d = 0.0, g = 0.0;
      kernel(x[i], a[c], v, d, g);
      y[i] = v * scale[c];
      if constexpr (WantDx) dx[i] = d * scale[c];
      if constexpr (WantDa) da[i] = g;
    }
  }
}

template <typename Kernel>
void dispatch_block(Kernel kernel, std::span<const double> x, std::size_t cols,
                    std::span<const double> a, std::span<const double> scale,
                    std::span<double> y, std::span<double> dx, std::span<double> da) {
  if (!dx.empty())
    run_block<true, false>(kernel, x, cols, a, scale, y, dx, da);
  else
    run_block<false, false>(kernel, x, cols, a, scale, y, dx, da);
}

}  // namespace

void evaluate_block(const Activation& act, std::span<const double> x, std::size_t cols,
                    std::span<const double> a, std::span<const double> scale,
                    std::span<double> y, std::span<double> dx, std::span<double> da) {
  if (cols == 0 || x.size() % cols != 0 || a.size() != cols || scale.size() != cols ||
      y.size() != x.size() || (!dx.empty() && dx.size() != x.size()) ||
      (!da.empty() && da.size() != x.size()))
    throw ShapeError("evaluate_block: inconsistent buffer sizes");
  const double slope = act.param();
  switch (act.kind()) {
    case ActivationKind::kReLU:
      return dispatch_block(
          [](double v, double, double& out, double& d, double&) {
            out = v > 0.0 ? v : 0.0;
            d = v > 0.0 ? 1.0 : 0.0;
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kLeakyReLU:
      return dispatch_block(
          [slope](double v, double, double& out, double& d, double&) {
            out = v > 0.0 ? v : slope * v;
            d = v > 0.0 ? 1.0 : slope;
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kTanh:
      return dispatch_block(
          [](double v, double, double& out, double& d, double&) {
            out = std::tanh(v);
            d = 1.0 - out * out;
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kSwish:
      return dispatch_block(
          [](double v, double, double& out, double& d, double&) {
            const double s = sigmoid(v);
            out = v * s;
            d = s + v * s * (1.0 - s);
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kSin:
      return dispatch_block(
          [](double v, double, double& out, double& d, double&) {
            out = std::sin(v);
            d = std::cos(v);
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kXPlusSin:
      return dispatch_block(
          [](double v, double, double& out, double& d, double&) {
            out = v + std::sin(v);
            d = 1.0 + std::cos(v);
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kXPlusCos:
      return dispatch_block(
          [](double v, double, double& out, double& d, double&) {
            out = v + std::cos(v);
            d = 1.0 - std::sin(v);
          },
          x, cols, a, scale, y, dx, da);
    case ActivationKind::kSnake:
    case ActivationKind::kSnakeLearnable: {
      auto kernel = [](double v, double freq, double& out, double& d, double& g) {
        const double s = std::sin(freq * v);
        const double c = std::cos(freq * v);
        out = v + s * s / freq;
        d = 1.0 + 2.0 * s * c;
        g = v * 2.0 * s * c / freq - s * s / (freq * freq);
      };
      if (!da.empty()) {
        // d/da of the unscaled value; the caller folds in the scale.
        return run_block<true, true>(kernel, x, cols, a, scale, y, dx, da);
      }
      if (!dx.empty()) return run_block<true, false>(kernel, x, cols, a, scale, y, dx, da);
      return run_block<false, false>(
          [](double v, double freq, double& out, double&, double&) {
            const double s = std::sin(freq * v);
            out = v + s * s / freq;
          },
          x, cols, a, scale, y, dx, da);
    }
  }
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// k-th derivative at 0 by the central difference
//   sum_j (-1)^j C(k, j) f((k/2 - j) h) / h^k,   error O(h^2).
double central_derivative(const Activation& act, int k, double h) {
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double x = (0.5 * k - j) * h;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(k, j) * act(x);
  }
  return acc / std::pow(h, k);
}

}  // namespace

std::vector<double> taylor_check(const Activation& act, int order) {
  if (!act.is_analytic())
    throw ContractError("taylor_check: activation '" + act.name() +
                        "' is not analytic at 0");
  if (order < 0) throw ContractError("taylor_check: order must be non-negative");
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(order) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) factorial *= k;
    if (k == 0) {
      coeffs.push_back(act(0.0));
      continue;
    }
    // Two rounds of Richardson extrapolation over h, h/2, h/4 cancel the
    // h^2 and h^4 error terms; h grows with k to keep round-off bounded.
    const double h = 0.02 * (1 << ((k + 1) / 2));
    const double d1 = central_derivative(act, k, h);
    const double d2 = central_derivative(act, k, h / 2);
    const double d4 = central_derivative(act, k, h / 4);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    coeffs.push_back(((16.0 * r2 - r1) / 15.0) / factorial);
  }
  return coeffs;
}

}  // namespace snake
