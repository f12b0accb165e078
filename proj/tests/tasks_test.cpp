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

#include "snake/tasks.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "snake/errors.hpp"

namespace snake {
namespace {

TEST(TargetTest, NamesRoundTrip) {
  for (const char* name : {"linear", "tanh", "sin", "x2", "rect", "sin_mix", "cos_mix", "noisy_sin"})
    EXPECT_EQ(target_name(parse_target(name)), name);
  EXPECT_THROW(parse_target("cosine"), ContractError);
}

TEST(TargetTest, Values) {
  EXPECT_DOUBLE_EQ(target_value(TargetKind::kSquare, -3.0), 9.0);
  EXPECT_DOUBLE_EQ(target_value(TargetKind::kSinMix, 1.0), std::sin(1.0) + std::sin(4.0) / 4);
  EXPECT_DOUBLE_EQ(target_value(TargetKind::kCosMix, 6.0), std::cos(3.0) + 2 * std::sin(2.0));
  EXPECT_EQ(target_value(TargetKind::kRect, 1.0), 1.0);
  EXPECT_EQ(target_value(TargetKind::kRect, -1.0), -1.0);
  EXPECT_DOUBLE_EQ(target_value(TargetKind::kNoisySin, 5.0), std::sin(0.5));
}

TEST(TargetTest, PeriodsAndFrequencies) {
  EXPECT_FALSE(target_period(TargetKind::kSquare).has_value());
  EXPECT_TRUE(target_frequencies(TargetKind::kLinear).empty());
  for (auto k : {TargetKind::kSin, TargetKind::kRect, TargetKind::kSinMix, TargetKind::kCosMix,
                 TargetKind::kNoisySin}) {
    const double p = *target_period(k);
    for (double x : {0.3, 1.7, -2.2}) EXPECT_NEAR(target_value(k, x + p), target_value(k, x), 1e-9);
    for (double w : target_frequencies(k)) EXPECT_NEAR(std::remainder(w * p, 2 * M_PI), 0.0, 1e-9);
  }
}

TEST(GenerateTest, SamplesAvoidTheGap) {
  SyntheticTask t = SyntheticTask::preset(TargetKind::kSin);
  t.seed = 3;
  const Dataset d = generate(t);
  ASSERT_EQ(d.x_train.rows(), 200u);
  for (std::size_t i = 0; i < 200; ++i) {
    const double x = d.x_train(i, 0);
    EXPECT_GE(x, -5.0);
    EXPECT_LE(x, 5.0);
    EXPECT_FALSE(x > -1.0 && x < 1.0);
    EXPECT_EQ(d.y_train(i, 0), std::sin(x));
  }
  EXPECT_EQ(d.x_test.rows(), 3 * t.test_points_per_range);
  EXPECT_EQ(d.x_test(0, 0), -1.0);
  EXPECT_EQ(d.x_test(d.x_test.rows() - 1, 0), 10.0);
}

TEST(GenerateTest, RectangularWaveTakesTwoValues) {
  SyntheticTask t = SyntheticTask::preset(TargetKind::kRect);
  const Dataset d = generate(t);
  for (const Matrix* m : {&d.y_train, &d.y_test})
    for (double v : m->data()) EXPECT_TRUE(v == 1.0 || v == -1.0) << v;
}

TEST(GenerateTest, NoisySinProtocol) {
  const SyntheticTask t = SyntheticTask::preset(TargetKind::kNoisySin);
  const Dataset d = generate(t);
  ASSERT_EQ(d.x_train.rows(), 100u);
  double s2 = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(d.x_train(i, 0), static_cast<double>(i + 1));
    const double e = d.y_train(i, 0) - std::sin(0.1 * d.x_train(i, 0));
    s2 += e * e;
  }
  EXPECT_NEAR(s2 / 100, 0.04, 0.2 * 0.04);
  EXPECT_EQ(d.x_test(0, 0), 101.0);
  EXPECT_EQ(d.x_test(d.x_test.rows() - 1, 0), 300.0);
  ASSERT_EQ(t.test_ranges().size(), 1u);
  EXPECT_EQ(t.test_ranges()[0].name, "right");
}

TEST(GenerateTest, DeterministicInSeed) {
  SyntheticTask t = SyntheticTask::preset(TargetKind::kSinMix);
  t.noise_variance = 0.01;
  t.seed = 8;
  const Dataset a = generate(t), b = generate(t);
  EXPECT_EQ(a.x_train, b.x_train);
  EXPECT_EQ(a.y_train, b.y_train);
  t.seed = 9;
  EXPECT_NE(generate(t).x_train, a.x_train);
}

TEST(GenerateTest, NoGapMeansTwoRanges) {
  SyntheticTask t = SyntheticTask::preset(TargetKind::kSquare);
  t.gap_lo = t.gap_hi = 0.0;
  EXPECT_FALSE(t.has_gap());
  EXPECT_EQ(t.test_ranges().size(), 2u);
  EXPECT_EQ(generate(t).x_test.rows(), 2 * t.test_points_per_range);
}

TEST(GenerateTest, Validation) {
  SyntheticTask t;
  t.train_hi = t.train_lo;
  EXPECT_THROW(generate(t), ContractError);
  t = SyntheticTask{};
  t.gap_lo = -9;
  EXPECT_THROW(t.validate(), ContractError);
  t = SyntheticTask{};
  t.noise_variance = -1;
  EXPECT_THROW(t.validate(), ContractError);
  t = SyntheticTask::preset(TargetKind::kNoisySin);
  t.samples = 50;
  EXPECT_THROW(t.validate(), ContractError);
}

}  // namespace
}  // namespace snake
