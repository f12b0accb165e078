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

#include "snake/init.hpp"

#include <cmath>

#include "snake/activation.hpp"
#include "snake/errors.hpp"
#include "snake/random.hpp"

namespace snake {

InitScheme InitScheme::parse(std::string_view name) {
  if (name == "kaiming") return kaiming();
  if (name == "snake") return snake_uniform();
  if (name == "snake_corrected") return snake_corrected();
  throw ParameterError("unknown init scheme '" + std::string(name) + "'");
}

std::string InitScheme::name() const {
  switch (kind) {
    case InitKind::kKaimingUniform: return "kaiming";
    case InitKind::kSnakeUniform: return "snake";
    case InitKind::kSnakeUniformCorrected: return "snake_corrected";
  }
  return "unknown";
}

double InitScheme::bound(std::size_t fan_in) const {
  const double d = static_cast<double>(fan_in);
  return kind == InitKind::kKaimingUniform ? std::sqrt(6.0 / d) : std::sqrt(3.0 / d);
}

Matrix init_weights(const InitScheme& scheme, std::size_t rows, std::size_t cols,
                    std::uint64_t seed) {
  Matrix w(rows, cols);
  Rng rng(seed);
  const double b = scheme.bound(cols);
  for (double& v : w.data()) v = rng.uniform(-b, b);
  return w;
}

Matrix variance_correction(const Matrix& post_activation, double a) {
  const double sigma = std::sqrt(snake_variance(a));
  Matrix out = post_activation;
  for (double& v : out.data()) v /= sigma;
  return out;
}

}  // namespace snake
