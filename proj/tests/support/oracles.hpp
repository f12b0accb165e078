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

// Independent reference computations shared by the unit tests and the
// acceptance binary.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "snake/matrix.hpp"
#include "snake/mlp.hpp"
#include "snake/random.hpp"
#include "snake/train.hpp"

namespace snake::testing {

inline Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double lo = -1.0,
                            double hi = 1.0) {
  Matrix m(r, c);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

// Plain MSE of a forward pass, no tape involved.
inline double forward_mse(const Mlp& net, const Matrix& x, const Matrix& y) {
  const Matrix p = net.forward(x);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p.data()[i] - y.data()[i];
    s += d * d;
  }
  return s / static_cast<double>(p.size());
}

// Worst |analytic - central difference| / max(1, |analytic|, |fd|) over
// every parameter entry.
inline double network_gradient_error(Mlp net, const Matrix& x, const Matrix& y, double h = 1e-5) {
  const auto grads = loss_gradients(net, x, y);
  auto params = net.parameters();
  double worst = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    for (std::size_t i = 0; i < params[k]->size(); ++i) {
      double& p = params[k]->data()[i];
      const double orig = p;
      p = orig + h;
      const double up = forward_mse(net, x, y);
      p = orig - h;
      const double down = forward_mse(net, x, y);
      p = orig;
      const double fd = (up - down) / (2 * h);
      const double g = grads[k].data()[i];
      worst = std::max(worst, std::abs(g - fd) / std::max({1.0, std::abs(g), std::abs(fd)}));
    }
  }
  return worst;
}

// Direct O(N^2) DFT of a real signal.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) / static_cast<double>(n);
      s += x[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = s;
  }
  return out;
}

// Variance over the batch of each column, averaged over columns.
inline double unit_variance(const Matrix& h) {
  double acc = 0.0;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      s += h(r, c);
      s2 += h(r, c) * h(r, c);
    }
    const double n = static_cast<double>(h.rows());
    acc += s2 / n - (s / n) * (s / n);
  }
  return acc / static_cast<double>(h.cols());
}

}  // namespace snake::testing
