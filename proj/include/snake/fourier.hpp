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
#include <functional>
#include <vector>

#include "snake/mlp.hpp"

namespace snake {

// Truncated Fourier series on [-L, L] (period 2L):
//   mean + sum_k alpha_k cos(k pi x / L) + beta_k sin(k pi x / L).
// `mean` is the a_0 / 2 term. alpha[k-1] and beta[k-1] hold order k.
struct FourierSpec {
  double half_period = 1.0;  // L
  double mean = 0.0;
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t order() const noexcept { return alpha.size(); }
  double period() const noexcept { return 2.0 * half_period; }
  double partial_sum(double x) const;
  // Throws ContractError unless L > 0 and alpha, beta have equal size.
  void validate() const;
};

// Normalized coefficients (1/L factor) by composite Simpson quadrature over
// [-L, L]. `points` is the number of subintervals, at least 64 m; it is
// rounded up to a multiple of 4 so that x = 0 sits on a panel boundary.
FourierSpec fourier_coefficients(const std::function<double(double)>& f, double half_period,
                                 std::size_t order, std::size_t points);

// (2 mean^2 + sum alpha^2 + beta^2) / ((1/L) int f^2) by the same quadrature.
double parseval_ratio(const FourierSpec& spec, const std::function<double(double)>& f,
                      std::size_t points);

// Two Snake neurons and an output offset representing cos(omega x + phase):
//   offset + v[0] snake(w[0] x + b[0]) + v[1] snake(w[1] x + b[1]).
// Uses a (snake(t) + snake(-t)) = 1 - cos(2 a t) with t = (omega x + phase) / (2a).
struct SnakePair {
  double w[2] = {0.0, 0.0};
  double b[2] = {0.0, 0.0};
  double v[2] = {0.0, 0.0};
  double offset = 0.0;
  double a = 1.0;

  double operator()(double x) const;
};
SnakePair snake_cos_pair(double omega, double a, double phase = 0.0);

// One-hidden-layer Snake(a) net with forward(x) == spec.partial_sum(x).
// Hidden width is 4 m, plus 2 when the mean term is non-zero.
Mlp build_fourier_net(const FourierSpec& spec, double a);

struct BoundedApprox {
  std::size_t order = 0;
  double sup_error = 0.0;
  FourierSpec spec;
  Mlp net;  // input normalizer maps [lo, hi] onto [-L, L]
};

// Smallest m in {1, 2, 4, ..., 256} whose constructed net is within `eps` of
// g in sup norm on 10^4 uniform points of [lo, hi]. g is extended
// periodically from [lo, hi]. Throws CapacityError if no tested m works.
BoundedApprox bounded_approx_check(const std::function<double(double)>& g, double lo, double hi,
                                   double eps, double a = 1.0);

}  // namespace snake
