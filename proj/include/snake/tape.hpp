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
#include <map>
#include <optional>
#include <vector>

#include "snake/activation.hpp"
#include "snake/matrix.hpp"

namespace snake {

using NodeId = std::size_t;

// Elementwise activation shared by the tape and the tape-free forward path.
// `log_a` (1 x 1 or 1 x cols) overrides the activation's fixed frequency;
// `corrected` divides Snake outputs by sqrt(snake_variance(a)).
Matrix apply_activation(const Matrix& x, const Activation& act, const Matrix* log_a,
                        bool corrected);

// Define-by-run reverse-mode tape. Every primitive records its operands and
// caches its forward value; backward() walks the record in reverse.
class Tape {
 public:
  enum class Op {
    kInput,              // constant leaf, no gradient reported
    kParameter,          // leaf whose gradient backward() reports
    kMatMul,             // a * b
    kMatMulTransposed,   // a * b^T
    kAddBias,            // x + 1 x cols row, broadcast over rows
    kActivation,         // elementwise activation, optional learned log a
    kMeanSquareError,    // mean((pred - target)^2), 1 x 1
  };

  NodeId input(Matrix value);
  NodeId parameter(Matrix value);

  NodeId matmul(NodeId a, NodeId b);
  NodeId matmul_transposed(NodeId a, NodeId b);
  NodeId add_bias(NodeId x, NodeId bias);
  // Applies `act` elementwise. With `log_a` the Snake frequency is
  // exp(log_a), where log_a is 1 x 1 (shared) or 1 x cols (per column).
  // With `corrected` the output is divided by sqrt(snake_variance(a)).
  NodeId activate(NodeId x, const Activation& act,
                  std::optional<NodeId> log_a = std::nullopt, bool corrected = false);
  NodeId mean_square_error(NodeId prediction, NodeId target);

  // Throw ContractError for ids not on this tape.
  const Matrix& value(NodeId id) const { return node(id).value; }
  Op op(NodeId id) const { return node(id).op; }
  std::size_t size() const noexcept { return nodes_.size(); }

  // d loss / d p for every parameter node p. `loss` must be 1 x 1.
  std::map<NodeId, Matrix> backward(NodeId loss) const;

  // Recomputes every node from its leaves in recording order.
  std::vector<Matrix> replay() const;

  struct Node {
    Op op = Op::kInput;
    std::vector<NodeId> inputs;
    Matrix value;
    Activation act;
    bool corrected = false;
    bool needs_grad = false;
    // Activation nodes: local d/dx (and d/da for learned frequencies),
    // already including the variance-correction factor.
    Matrix dx;
    Matrix da;
  };

 private:
  const Node& node(NodeId id) const;
  NodeId push(Node node);
  Matrix compute(const Node& node, const std::vector<Matrix>& values) const;

  std::vector<Node> nodes_;
};

}  // namespace snake
