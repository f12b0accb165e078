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

#include "snake/tape.hpp"

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "snake/errors.hpp"
#include "snake/random.hpp"

namespace snake {
namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double lo = -2.0, double hi = 2.0) {
  Matrix m(r, c);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

// Builds a loss from parameter values; returns the loss node.
using Builder = std::function<NodeId(Tape&, const std::vector<NodeId>&)>;

double loss_of(const Builder& build, const std::vector<Matrix>& params) {
  Tape t;
  std::vector<NodeId> ids;
  for (const auto& p : params) ids.push_back(t.parameter(p));
  return t.value(build(t, ids))(0, 0);
}

// Worst relative error between backward() and central differences (step 1e-5).
double gradient_error(const Builder& build, std::vector<Matrix> params) {
  Tape t;
  std::vector<NodeId> ids;
  for (const auto& p : params) ids.push_back(t.parameter(p));
  const auto grads = t.backward(build(t, ids));
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const Matrix& g = grads.at(ids[k]);
    EXPECT_TRUE(g.same_shape(params[k]));
    for (std::size_t i = 0; i < params[k].size(); ++i) {
      const double orig = params[k].data()[i];
      params[k].data()[i] = orig + h;
      const double up = loss_of(build, params);
      params[k].data()[i] = orig - h;
      const double down = loss_of(build, params);
      params[k].data()[i] = orig;
      worst = std::max(worst, rel_err(g.data()[i], (up - down) / (2 * h)));
    }
  }
  return worst;
}

TEST(TapeTest, LinearMseExample) {
  // loss = mean((W x - y)^2), W = 0, x = y = ones(3).
  Tape t;
  const NodeId w = t.parameter(Matrix(1, 3, 0.0));
  const NodeId x = t.input(Matrix(3, 1, 1.0));
  const NodeId y = t.input(Matrix(1, 1, 1.0));
  const NodeId loss = t.mean_square_error(t.matmul(w, x), y);
  const auto g = t.backward(loss);
  // d/dW (Wx - y)^2 = 2 (Wx - y) x^T = -2 x^T.
  for (double v : g.at(w).data()) EXPECT_NEAR(v, -2.0, 1e-12);
  EXPECT_LT(gradient_error(
                [](Tape& tp, const std::vector<NodeId>& p) {
                  return tp.mean_square_error(tp.matmul(p[0], tp.input(Matrix(3, 1, 1.0))),
                                              tp.input(Matrix(1, 1, 1.0)));
                },
                {Matrix(1, 3, 0.0)}),
            1e-6);
}

TEST(TapeTest, ConstantParameterHasZeroGradient) {
  Tape t;
  const NodeId unused = t.parameter(Matrix(2, 2, 1.0));
  const NodeId w = t.parameter(Matrix(1, 1, 3.0));
  const NodeId loss = t.mean_square_error(w, t.input(Matrix(1, 1, 0.0)));
  const auto g = t.backward(loss);
  for (double v : g.at(unused).data()) EXPECT_EQ(v, 0.0);
  EXPECT_DOUBLE_EQ(g.at(w)(0, 0), 6.0);
}

TEST(TapeTest, NonScalarLossIsContractError) {
  Tape t;
  const NodeId w = t.parameter(Matrix(2, 2, 1.0));
  EXPECT_THROW((void)t.backward(w), ContractError);
}

TEST(TapeTest, OperandShapeErrors) {
  Tape t;
  const NodeId a = t.parameter(Matrix(2, 3));
  const NodeId b = t.parameter(Matrix(2, 3));
  EXPECT_THROW(t.matmul(a, b), ShapeError);
  EXPECT_THROW(t.add_bias(a, t.input(Matrix(1, 2))), ShapeError);
  EXPECT_THROW(t.mean_square_error(a, t.input(Matrix(3, 2))), ShapeError);
  EXPECT_THROW(t.matmul(a, 99), ContractError);
}

class PrimitiveGradientTest : public ::testing::Test {
 protected:
  Rng rng{2024};
};

TEST_F(PrimitiveGradientTest, MatMul) {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix target = random_matrix(3, 2, rng);
    const double err = gradient_error(
        [&](Tape& t, const std::vector<NodeId>& p) {
          return t.mean_square_error(t.matmul(p[0], p[1]), t.input(target));
        },
        {random_matrix(3, 4, rng), random_matrix(4, 2, rng)});
    ASSERT_LT(err, 1e-5) << "trial " << trial;
  }
}

TEST_F(PrimitiveGradientTest, MatMulTransposed) {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix target = random_matrix(3, 5, rng);
    const double err = gradient_error(
        [&](Tape& t, const std::vector<NodeId>& p) {
          return t.mean_square_error(t.matmul_transposed(p[0], p[1]), t.input(target));
        },
        {random_matrix(3, 2, rng), random_matrix(5, 2, rng)});
    ASSERT_LT(err, 1e-5) << "trial " << trial;
  }
}

TEST_F(PrimitiveGradientTest, AddBias) {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix target = random_matrix(4, 3, rng);
    const double err = gradient_error(
        [&](Tape& t, const std::vector<NodeId>& p) {
          return t.mean_square_error(t.add_bias(p[0], p[1]), t.input(target));
        },
        {random_matrix(4, 3, rng), random_matrix(1, 3, rng)});
    ASSERT_LT(err, 1e-5) << "trial " << trial;
  }
}

TEST_F(PrimitiveGradientTest, MeanSquareErrorBothSides) {
  for (int trial = 0; trial < 100; ++trial) {
    const double err = gradient_error(
        [](Tape& t, const std::vector<NodeId>& p) { return t.mean_square_error(p[0], p[1]); },
        {random_matrix(5, 2, rng), random_matrix(5, 2, rng)});
    ASSERT_LT(err, 1e-5) << "trial " << trial;
  }
}

TEST_F(PrimitiveGradientTest, EveryActivationKind) {
  const std::vector<Activation> acts = {
      Activation::relu(),  Activation::leaky_relu(0.1), Activation::tanh(),
      Activation::swish(), Activation::sin(),           Activation::x_plus_sin(),
      Activation::x_plus_cos(), Activation::snake(1.7)};
  for (const auto& act : acts) {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix target = random_matrix(3, 4, rng);
      Matrix x = random_matrix(3, 4, rng);
      if (!act.is_analytic()) {
        // Keep central differences away from the kink.
        for (double& v : x.data())
          if (std::abs(v) < 1e-3) v = 0.5;
      }
      const double err = gradient_error(
          [&](Tape& t, const std::vector<NodeId>& p) {
            return t.mean_square_error(t.activate(p[0], act), t.input(target));
          },
          {x});
      ASSERT_LT(err, 1e-5) << act.name() << " trial " << trial;
    }
  }
}

TEST_F(PrimitiveGradientTest, LearnedFrequencySharedAndPerColumn) {
  for (bool corrected : {false, true}) {
    for (std::size_t acols : {1u, 4u}) {
      for (int trial = 0; trial < 100; ++trial) {
        const Matrix target = random_matrix(3, 4, rng);
        Matrix log_a = random_matrix(1, acols, rng, -1.0, 1.0);
        const double err = gradient_error(
            [&](Tape& t, const std::vector<NodeId>& p) {
              return t.mean_square_error(
                  t.activate(p[0], Activation::snake_learnable(1.0), p[1], corrected),
                  t.input(target));
            },
            {random_matrix(3, 4, rng), log_a});
        ASSERT_LT(err, 1e-5) << "corrected " << corrected << " cols " << acols;
      }
    }
  }
}

TEST_F(PrimitiveGradientTest, CorrectedFixedSnake) {
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix target = random_matrix(2, 3, rng);
    const double err = gradient_error(
        [&](Tape& t, const std::vector<NodeId>& p) {
          return t.mean_square_error(t.activate(p[0], Activation::snake(0.5), std::nullopt, true),
                                     t.input(target));
        },
        {random_matrix(2, 3, rng)});
    ASSERT_LT(err, 1e-5);
  }
}

TEST(TapeTest, ReplayIsBitIdentical) {
  Rng rng(9);
  Tape t;
  const NodeId x = t.input(random_matrix(16, 3, rng));
  const NodeId w1 = t.parameter(random_matrix(3, 8, rng));
  const NodeId b1 = t.parameter(random_matrix(1, 8, rng));
  const NodeId la = t.parameter(random_matrix(1, 8, rng, -0.5, 0.5));
  const NodeId h = t.activate(t.add_bias(t.matmul(x, w1), b1), Activation::snake_learnable(1.0), la, true);
  const NodeId w2 = t.parameter(random_matrix(1, 8, rng));
  const NodeId out = t.activate(t.matmul_transposed(h, w2), Activation::tanh());
  const NodeId loss = t.mean_square_error(out, t.input(random_matrix(16, 1, rng)));
  const auto replayed = t.replay();
  ASSERT_EQ(replayed.size(), t.size());
  for (NodeId i = 0; i < t.size(); ++i) EXPECT_EQ(replayed[i], t.value(i)) << "node " << i;
  EXPECT_EQ(t.op(loss), Tape::Op::kMeanSquareError);
}

TEST(TapeTest, ApplyActivationMatchesTapeValue) {
  Rng rng(10);
  const Matrix x = random_matrix(7, 5, rng);
  for (const auto& act : {Activation::snake(3.0), Activation::swish(), Activation::x_plus_cos()}) {
    Tape t;
    const NodeId y = t.activate(t.parameter(x), act);
    EXPECT_EQ(t.value(y), apply_activation(x, act, nullptr, false));
  }
}

}  // namespace
}  // namespace snake
