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

#include "snake/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "snake/errors.hpp"

namespace snake {

namespace {

using std::numbers::pi;

// Composite Simpson weights over [-L, L] with n (even) subintervals.
struct Simpson {
  std::vector<double> x;
  std::vector<double> w;
};

Simpson simpson_nodes(double half_period, std::size_t n) {
  Simpson s;
  s.x.resize(n + 1);
  s.w.resize(n + 1);
  const double h = 2.0 * half_period / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    s.x[i] = -half_period + h * static_cast<double>(i);
    const double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s.w[i] = c * h / 3.0;
  }
  s.x[n / 2] = 0.0;
  return s;
}

std::size_t round_up4(std::size_t n) { return (n + 3) / 4 * 4; }

}  // namespace

double FourierSpec::partial_sum(double x) const {
  double s = mean;
  const double base = pi * x / half_period;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const double t = static_cast<double>(k + 1) * base;
    s += alpha[k] * std::cos(t) + beta[k] * std::sin(t);
  }
  return s;
}

void FourierSpec::validate() const {
  if (!(half_period > 0.0) || !std::isfinite(half_period))
    throw ContractError("FourierSpec: half period must be positive");
  if (alpha.size() != beta.size())
    throw ContractError("FourierSpec: alpha and beta differ in length");
}

FourierSpec fourier_coefficients(const std::function<double(double)>& f, double half_period,
                                 std::size_t order, std::size_t points) {
  if (order < 1) throw ContractError("fourier_coefficients: order must be >= 1");
  if (points < 64 * order)
    throw ContractError("fourier_coefficients: need at least 64 m quadrature points, got " +
                        std::to_string(points));
  if (!(half_period > 0.0)) throw ContractError("fourier_coefficients: L must be positive");
  const auto q = simpson_nodes(half_period, round_up4(points));
  std::vector<double> fx(q.x.size());
  for (std::size_t i = 0; i < q.x.size(); ++i) fx[i] = f(q.x[i]);

  FourierSpec spec;
  spec.half_period = half_period;
  spec.alpha.assign(order, 0.0);
  spec.beta.assign(order, 0.0);
  double a0 = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) a0 += q.w[i] * fx[i];
  spec.mean = a0 / (2.0 * half_period);
  for (std::size_t k = 1; k <= order; ++k) {
    double ca = 0.0, sb = 0.0;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
      const double t = static_cast<double>(k) * pi * q.x[i] / half_period;
      ca += q.w[i] * fx[i] * std::cos(t);
      sb += q.w[i] * fx[i] * std::sin(t);
    }
    spec.alpha[k - 1] = ca / half_period;
    spec.beta[k - 1] = sb / half_period;
  }
  return spec;
}

double parseval_ratio(const FourierSpec& spec, const std::function<double(double)>& f,
                      std::size_t points) {
  spec.validate();
  const auto q = simpson_nodes(spec.half_period, round_up4(std::max<std::size_t>(points, 4)));
  double energy = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) {
    const double v = f(q.x[i]);
    energy += q.w[i] * v * v;
  }
  energy /= spec.half_period;
  double coeff = 2.0 * spec.mean * spec.mean;
  for (std::size_t k = 0; k < spec.order(); ++k)
    coeff += spec.alpha[k] * spec.alpha[k] + spec.beta[k] * spec.beta[k];
  if (energy == 0.0) return coeff == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return coeff / energy;
}

double SnakePair::operator()(double x) const {
  return offset + v[0] * snake(w[0] * x + b[0], a) + v[1] * snake(w[1] * x + b[1], a);
}

SnakePair snake_cos_pair(double omega, double a, double phase) {
  if (!(a > 0.0)) throw ParameterError("snake_cos_pair: a must be positive");
  SnakePair p;
  p.a = a;
  p.w[0] = omega / (2.0 * a);
  p.w[1] = -p.w[0];
  p.b[0] = phase / (2.0 * a);
  p.b[1] = -p.b[0];
  p.v[0] = p.v[1] = -a;
  p.offset = 1.0;
  return p;
}

Mlp build_fourier_net(const FourierSpec& spec, double a) {
  spec.validate();
  if (spec.order() < 1) throw ContractError("build_fourier_net: order must be >= 1");
  if (!(a > 0.0)) throw ParameterError("build_fourier_net: a must be positive");
  const std::size_t m = spec.order();
  const bool with_mean = spec.mean != 0.0;
  const std::size_t width = 4 * m + (with_mean ? 2 : 0);

  DenseLayer hidden{Matrix(width, 1, 0.0), Matrix(1, width, 0.0)};
  DenseLayer out{Matrix(1, width, 0.0), Matrix(1, 1, 0.0)};
  std::size_t col = 0;
  double offset = 0.0;
  auto place = [&](const SnakePair& p, double coeff) {
    for (int j = 0; j < 2; ++j) {
      hidden.weight(col, 0) = p.w[j];
      hidden.bias(0, col) = p.b[j];
      out.weight(0, col) = coeff * p.v[j];
      ++col;
    }
    offset += coeff * p.offset;
  };
  for (std::size_t k = 1; k <= m; ++k) {
    const double omega = static_cast<double>(k) * pi / spec.half_period;
    place(snake_cos_pair(omega, a), spec.alpha[k - 1]);
    // sin(t) = cos(t - pi/2)
    place(snake_cos_pair(omega, a, -pi / 2.0), spec.beta[k - 1]);
  }
  if (with_mean) place(snake_cos_pair(0.0, a), spec.mean);
  out.bias(0, 0) = offset;
  return Mlp({std::move(hidden), std::move(out)}, Activation::snake(a));
}

BoundedApprox bounded_approx_check(const std::function<double(double)>& g, double lo, double hi,
                                   double eps, double a) {
  if (!(hi > lo)) throw ContractError("bounded_approx_check: need hi > lo");
  if (!(eps > 0.0)) throw ContractError("bounded_approx_check: eps must be positive");
  const double half = 0.5 * (hi - lo);
  const double centre = 0.5 * (hi + lo);
  const auto shifted = [&](double t) { return g(t + centre); };

  constexpr std::size_t kGrid = 10000;
  std::vector<double> xs(kGrid);
  for (std::size_t i = 0; i < kGrid; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kGrid - 1);
  const Matrix xin = Matrix::column(xs);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m <= 256; m *= 2) {
    BoundedApprox r;
    r.order = m;
    r.spec = fourier_coefficients(shifted, half, m, std::max<std::size_t>(64 * m, 4096));
    r.net = build_fourier_net(r.spec, a);
    r.net.set_normalizer(InputNormalizer{{centre}, {1.0}});
    const Matrix y = r.net.forward(xin);
    double err = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) err = std::max(err, std::abs(y(i, 0) - g(xs[i])));
    r.sup_error = err;
    best = std::min(best, err);
    if (err <= eps) return r;
  }
  throw CapacityError("bounded_approx_check: sup error " + std::to_string(best) +
                      " at best over m <= 256 exceeds eps " + std::to_string(eps));
}

}  // namespace snake
