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

#include "snake/errors.hpp"

namespace snake {

namespace {

// Frequency for element (r, c) given an optional 1 x 1 or 1 x cols log a.
inline double frequency(const Matrix* log_a, std::size_t c, double fixed) {
  if (log_a == nullptr) return fixed;
  return std::exp(log_a->cols() == 1 ? (*log_a)(0, 0) : (*log_a)(0, c));
}

}  // namespace

namespace {

struct ColumnParams {
  std::vector<double> a;
  std::vector<double> scale;
  std::vector<double> dscale;  // d scale / d a
};

ColumnParams column_params(const Activation& act, const Matrix* log_a, std::size_t cols,
                           bool corrected) {
  ColumnParams p{std::vector<double>(cols), std::vector<double>(cols, 1.0),
                 std::vector<double>(cols, 0.0)};
  const bool shared = log_a == nullptr || log_a->cols() == 1;
  for (std::size_t c = 0; c < cols; ++c) {
    if (shared && c > 0) {
      p.a[c] = p.a[0];
      p.scale[c] = p.scale[0];
      p.dscale[c] = p.dscale[0];
      continue;
    }
    p.a[c] = frequency(log_a, c, act.param());
    if (corrected) {
      const double var = snake_variance(p.a[c]);
      const double sigma = std::sqrt(var);
      p.scale[c] = 1.0 / sigma;
      p.dscale[c] = -snake_variance_deriv(p.a[c]) / (2.0 * var * sigma);
    }
  }
  return p;
}

}  // namespace

Matrix apply_activation(const Matrix& x, const Activation& act, const Matrix* log_a,
                        bool corrected) {
  const auto p = column_params(act, log_a, x.cols(), corrected);
  Matrix out = Matrix::uninitialized(x.rows(), x.cols());
  evaluate_block(act, x.data(), x.cols(), p.a, p.scale, out.data());
  return out;
}

namespace {

Tape::Node make_node(Tape::Op op, std::vector<NodeId> inputs, Matrix value) {
  Tape::Node n;
  n.op = op;
  n.inputs = std::move(inputs);
  n.value = std::move(value);
  return n;
}

}  // namespace

const Tape::Node& Tape::node(NodeId id) const {
  if (id >= nodes_.size()) throw ContractError("tape operand refers to an unknown node");
  return nodes_[id];
}

NodeId Tape::push(Node node) {
  node.needs_grad = node.op == Op::kParameter;
  for (NodeId in : node.inputs) {
    if (in >= nodes_.size()) throw ContractError("tape operand refers to an unknown node");
    node.needs_grad = node.needs_grad || nodes_[in].needs_grad;
  }
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

NodeId Tape::input(Matrix value) { return push(make_node(Op::kInput, {}, std::move(value))); }

NodeId Tape::parameter(Matrix value) {
  return push(make_node(Op::kParameter, {}, std::move(value)));
}

NodeId Tape::matmul(NodeId a, NodeId b) {
  return push(make_node(Op::kMatMul, {a, b}, snake::matmul(value(a), value(b))));
}

NodeId Tape::matmul_transposed(NodeId a, NodeId b) {
  return push(make_node(Op::kMatMulTransposed, {a, b},
                        snake::matmul_transposed(value(a), value(b))));
}

NodeId Tape::add_bias(NodeId x, NodeId bias) {
  return push(make_node(Op::kAddBias, {x, bias}, add_row_broadcast(value(x), value(bias))));
}

NodeId Tape::activate(NodeId x, const Activation& act, std::optional<NodeId> log_a,
                      bool corrected) {
  if (corrected && !act.is_snake())
    throw ContractError("variance correction applies to Snake activations only");
  Node node = make_node(Op::kActivation, {x}, {});
  node.act = act;
  node.corrected = corrected;
  const Matrix* la = nullptr;
  if (log_a) {
    if (!act.is_snake()) throw ContractError("learned frequency requires a Snake activation");
    la = &value(*log_a);
    if (la->rows() != 1 || (la->cols() != 1 && la->cols() != value(x).cols()))
      throw ShapeError("log_a must be 1x1 or 1x" + std::to_string(value(x).cols()) +
                       ", got " + la->shape_string());
    node.inputs.push_back(*log_a);
  }
  const Matrix& xv = value(x);
  const auto p = column_params(act, la, xv.cols(), corrected);
  node.value = Matrix::uninitialized(xv.rows(), xv.cols());
  node.dx = Matrix::uninitialized(xv.rows(), xv.cols());
  if (la) node.da = Matrix::uninitialized(xv.rows(), xv.cols());
  evaluate_block(act, xv.data(), xv.cols(), p.a, p.scale, node.value.data(), node.dx.data(),
                 la ? node.da.data() : std::span<double>{});
  if (la && corrected) {
    // d/da [f(x; a) * s(a)] = f_a * s + f * s'.
    for (std::size_t r = 0; r < xv.rows(); ++r)
      for (std::size_t c = 0; c < xv.cols(); ++c)
        node.da(r, c) = node.da(r, c) * p.scale[c] +
                        node.value(r, c) / p.scale[c] * p.dscale[c];
  }
  return push(std::move(node));
}

NodeId Tape::mean_square_error(NodeId prediction, NodeId target) {
  const Matrix& p = value(prediction);
  const Matrix& t = value(target);
  if (!p.same_shape(t))
    throw ShapeError("mean_square_error: incompatible shapes " + p.shape_string() + " and " +
                     t.shape_string());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p.data()[i] - t.data()[i];
    acc += d * d;
  }
  return push(make_node(Op::kMeanSquareError, {prediction, target},
                        Matrix(1, 1, acc / static_cast<double>(p.size()))));
}

Matrix Tape::compute(const Node& node, const std::vector<Matrix>& values) const {
  switch (node.op) {
    case Op::kInput:
    case Op::kParameter: return node.value;
    case Op::kMatMul: return snake::matmul(values[node.inputs[0]], values[node.inputs[1]]);
    case Op::kMatMulTransposed:
      return snake::matmul_transposed(values[node.inputs[0]], values[node.inputs[1]]);
    case Op::kAddBias: return add_row_broadcast(values[node.inputs[0]], values[node.inputs[1]]);
    case Op::kActivation: {
      const Matrix* la = node.inputs.size() > 1 ? &values[node.inputs[1]] : nullptr;
      return apply_activation(values[node.inputs[0]], node.act, la, node.corrected);
    }
    case Op::kMeanSquareError: {
      const Matrix& p = values[node.inputs[0]];
      const Matrix& t = values[node.inputs[1]];
      double acc = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p.data()[i] - t.data()[i];
        acc += d * d;
      }
      return Matrix(1, 1, acc / static_cast<double>(p.size()));
    }
  }
  throw ContractError("unknown tape op");
}

std::vector<Matrix> Tape::replay() const {
  std::vector<Matrix> values;
  values.reserve(nodes_.size());
  for (const Node& n : nodes_) values.push_back(compute(n, values));
  return values;
}

std::map<NodeId, Matrix> Tape::backward(NodeId loss) const {
  if (loss >= nodes_.size()) throw ContractError("backward: unknown loss node");
  if (value(loss).rows() != 1 || value(loss).cols() != 1)
    throw ContractError("backward: loss must be 1x1, got " + value(loss).shape_string());

  std::vector<std::optional<Matrix>> adj(nodes_.size());
  adj[loss] = Matrix(1, 1, 1.0);
  auto accumulate = [&adj, this](NodeId id, Matrix g) {
    if (!nodes_[id].needs_grad) return;
    if (adj[id]) {
      auto dst = adj[id]->data();
      auto src = g.data();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    } else {
      adj[id] = std::move(g);
    }
  };

  // Nodes are recorded after their operands, so reverse index order is a
  // reverse topological order.
  for (std::size_t k = loss + 1; k-- > 0;) {
    if (!adj[k]) continue;
    const Node& n = nodes_[k];
    if (n.op == Op::kParameter || n.op == Op::kInput) continue;
    // Each node is visited once, so its adjoint can be consumed.
    Matrix g = std::move(*adj[k]);
    adj[k].reset();
    auto wants = [this](NodeId id) { return nodes_[id].needs_grad; };
    switch (n.op) {
      case Op::kInput:
      case Op::kParameter: break;
      case Op::kMatMul: {
        const Matrix& a = value(n.inputs[0]);
        const Matrix& b = value(n.inputs[1]);
        if (wants(n.inputs[0])) accumulate(n.inputs[0], snake::matmul_transposed(g, b));
        if (wants(n.inputs[1])) accumulate(n.inputs[1], snake::transposed_matmul(a, g));
        break;
      }
      case Op::kMatMulTransposed: {
        const Matrix& a = value(n.inputs[0]);
        const Matrix& b = value(n.inputs[1]);
        if (wants(n.inputs[0])) accumulate(n.inputs[0], snake::matmul(g, b));
        if (wants(n.inputs[1])) accumulate(n.inputs[1], snake::transposed_matmul(g, a));
        break;
      }
      case Op::kAddBias:
        if (wants(n.inputs[1])) accumulate(n.inputs[1], column_sums(g));
        accumulate(n.inputs[0], std::move(g));
        break;
      case Op::kActivation: {
        const Matrix* la = n.inputs.size() > 1 ? &value(n.inputs[1]) : nullptr;
        std::optional<Matrix> gla;
        if (la) {
          gla = Matrix(1, la->cols());
          for (std::size_t c = 0; c < g.cols(); ++c) {
            double ga = 0.0;
            for (std::size_t r = 0; r < g.rows(); ++r) ga += g(r, c) * n.da(r, c);
            // Chain through a = exp(log a).
            (*gla)(0, la->cols() == 1 ? 0 : c) += ga * frequency(la, c, 0.0);
          }
        }
        auto gd = g.data();
        auto dd = n.dx.data();
        for (std::size_t i = 0; i < gd.size(); ++i) gd[i] *= dd[i];
        if (la) accumulate(n.inputs[1], std::move(*gla));
        accumulate(n.inputs[0], std::move(g));
        break;
      }
      case Op::kMeanSquareError: {
        const Matrix& p = value(n.inputs[0]);
        const Matrix& t = value(n.inputs[1]);
        const double s = 2.0 * g(0, 0) / static_cast<double>(p.size());
        Matrix gp(p.rows(), p.cols());
        for (std::size_t i = 0; i < p.size(); ++i)
          gp.data()[i] = s * (p.data()[i] - t.data()[i]);
        if (wants(n.inputs[1])) accumulate(n.inputs[1], -1.0 * gp);
        accumulate(n.inputs[0], std::move(gp));
        break;
      }
    }
  }

  std::map<NodeId, Matrix> grads;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].op != Op::kParameter) continue;
    grads.emplace(k, adj[k] ? std::move(*adj[k])
                            : Matrix(nodes_[k].value.rows(), nodes_[k].value.cols()));
  }
  return grads;
}

}  // namespace snake
