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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "snake/activation.hpp"
#include "snake/errors.hpp"
#include "snake/random.hpp"

namespace snake {
namespace {

constexpr double kPi = std::numbers::pi;

double square_wave(double x) {
  const double r = std::remainder(x, 2.0 * kPi);
  return r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0);
}

double sup_diff(const Mlp& net, const FourierSpec& spec, double lo, double hi, int n = 2001) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    worst = std::max(worst, std::abs(net.forward_scalar(x) - spec.partial_sum(x)));
  }
  return worst;
}

TEST(SnakePairTest, ReproducesCosine) {
  for (double a : {0.3, 1.0, 4.0}) {
    for (double omega : {0.0, 1.0, 2.5, 17.0}) {
      const SnakePair p = snake_cos_pair(omega, a);
      const SnakePair s = snake_cos_pair(omega, a, -kPi / 2);
      for (double x = -7.0; x <= 7.0; x += 0.173) {
        EXPECT_NEAR(p(x), std::cos(omega * x), 1e-12) << a << " " << omega << " " << x;
        EXPECT_NEAR(s(x), std::sin(omega * x), 1e-12);
      }
    }
  }
  EXPECT_THROW(snake_cos_pair(1.0, 0.0), ParameterError);
}

TEST(SnakePairTest, EvenIdentity) {
  // snake(t) + snake(-t) = 2 sin^2(a t) / a.
  for (double t = -3.0; t <= 3.0; t += 0.25)
    EXPECT_NEAR(snake(t, 1.5) + snake(-t, 1.5), 2 * std::pow(std::sin(1.5 * t), 2) / 1.5, 1e-14);
}

TEST(FourierNetTest, SingleCosine) {
  const FourierSpec spec{kPi, 0.0, {1.0}, {0.0}};
  const Mlp net = build_fourier_net(spec, 1.0);
  EXPECT_EQ(net.widths(), (std::vector<std::size_t>{1, 4, 1}));
  for (double x : {0.0, 1.0, -2.0, 10.0}) EXPECT_NEAR(net.forward_scalar(x), std::cos(x), 1e-12);
}

TEST(FourierNetTest, MeanNeedsTwoExtraNeurons) {
  const FourierSpec spec{1.0, 0.5, {0.0, 0.25}, {1.0, 0.0}};
  const Mlp net = build_fourier_net(spec, 2.0);
  EXPECT_EQ(net.widths()[1], 4 * 2 + 2);
  EXPECT_LT(sup_diff(net, spec, -3, 3), 1e-12);
  EXPECT_THROW(build_fourier_net(FourierSpec{0.0, 0.0, {1.0}, {1.0}}, 1.0), ContractError);
  EXPECT_THROW(build_fourier_net(FourierSpec{1.0, 0.0, {1.0}, {}}, 1.0), ContractError);
}

TEST(FourierNetTest, RandomSpecsHoldEverywhere) {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    FourierSpec spec;
    spec.half_period = rng.uniform(0.5, 4.0);
    spec.mean = rng.normal();
    const std::size_t m = 1 + rng.next_u64() % 10;
    for (std::size_t k = 0; k < m; ++k) {
      spec.alpha.push_back(rng.normal());
      spec.beta.push_back(rng.normal());
    }
    const double a = rng.uniform(0.2, 5.0);
    const Mlp net = build_fourier_net(spec, a);
    const double L = spec.half_period;
    EXPECT_LT(sup_diff(net, spec, -3 * L, 3 * L), 1e-10) << trial;
    EXPECT_LT(sup_diff(net, spec, 10 * L, 11 * L, 500), 1e-10) << trial;
  }
}

TEST(FourierCoefficientsTest, SquareWave) {
  const FourierSpec spec = fourier_coefficients(square_wave, kPi, 7, 1 << 16);
  for (std::size_t k = 1; k <= 7; ++k) {
    const double expected = k % 2 == 1 ? 4.0 / (kPi * k) : 0.0;
    EXPECT_NEAR(spec.beta[k - 1], expected, 1e-6) << k;
    EXPECT_NEAR(spec.alpha[k - 1], 0.0, 1e-9);
  }
  EXPECT_NEAR(spec.mean, 0.0, 1e-9);
}

TEST(FourierCoefficientsTest, SmoothFunctionIsExact) {
  const auto f = [](double x) { return 2.0 + 3.0 * std::cos(2 * x) - 0.5 * std::sin(x); };
  const FourierSpec spec = fourier_coefficients(f, kPi, 3, 1024);
  EXPECT_NEAR(spec.mean, 2.0, 1e-12);
  EXPECT_NEAR(spec.alpha[1], 3.0, 1e-12);
  EXPECT_NEAR(spec.beta[0], -0.5, 1e-12);
  EXPECT_NEAR(parseval_ratio(spec, f, 1024), 1.0, 1e-12);
  EXPECT_THROW(fourier_coefficients(f, kPi, 0, 1024), ContractError);
  EXPECT_THROW(fourier_coefficients(f, kPi, 32, 1024), ContractError);
}

TEST(FourierCoefficientsTest, ParsevalRatioGrowsTowardOne) {
  double prev = 0.0;
  for (std::size_t m : {1u, 3u, 9u, 27u}) {
    const double r = parseval_ratio(fourier_coefficients(square_wave, kPi, m, 1 << 16), square_wave, 1 << 16);
    EXPECT_GT(r, prev);
    EXPECT_LE(r, 1.0 + 1e-9);
    prev = r;
  }
  EXPECT_GT(prev, 0.98);
}

TEST(BoundedApproxTest, SmoothTargetsConverge) {
  const auto q = bounded_approx_check([](double x) { return std::sin(x); }, -kPi, kPi, 1e-6);
  EXPECT_EQ(q.order, 1u);
  EXPECT_LT(q.sup_error, 1e-6);
  const auto sq = bounded_approx_check([](double x) { return x * x; }, -1.0, 1.0, 1e-2);
  EXPECT_LT(sq.sup_error, 1e-2);
  EXPECT_NEAR(sq.net.forward_scalar(0.5), 0.25, 1e-2);
}

TEST(BoundedApproxTest, DiscontinuityExhaustsCapacity) {
  EXPECT_THROW(bounded_approx_check(square_wave, -kPi, kPi, 1e-3), CapacityError);
  EXPECT_THROW(bounded_approx_check(square_wave, 1.0, 1.0, 1e-3), ContractError);
}

}  // namespace
}  // namespace snake
