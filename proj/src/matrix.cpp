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

#include "snake/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "snake/errors.hpp"

namespace snake {

namespace {

void require_positive(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive, got " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

std::string pair_message(const char* op, const Matrix& a, const Matrix& b) {
  std::ostringstream os;
  os << op << ": incompatible shapes " << a.shape_string() << " and "
     << b.shape_string();
  return os.str();
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_positive(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, NoFill) : rows_(rows), cols_(cols) {
  require_positive(rows, cols);
  data_.resize(rows * cols);
}

Matrix Matrix::uninitialized(std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols, NoFill{});
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(data.begin(), data.end()) {
  require_positive(rows, cols);
  if (data_.size() != rows * cols) {
    throw ShapeError("matrix data length " + std::to_string(data_.size()) +
                     " does not match " + shape_string());
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  require_positive(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> values) {
  return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::row(std::span<const double> values) {
  return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

std::string Matrix::shape_string() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix Matrix::transposed() const {
  Matrix t = uninitialized(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError(pair_message("matmul", a, b));
  Matrix out(a.rows(), b.cols());
  const std::size_t n = a.cols();
  const std::size_t m = b.cols();
  auto od = out.data();
  auto ad = a.data();
  auto bd = b.data();
  // Four output rows per pass share each row of b. Every entry still sums
  // over k in ascending order.
  std::size_t i = 0;
  for (; i + 4 <= a.rows(); i += 4) {
    double* o0 = od.data() + i * m;
    double* o1 = o0 + m;
    double* o2 = o1 + m;
    double* o3 = o2 + m;
    for (std::size_t k = 0; k < n; ++k) {
      const double a0 = ad[i * n + k], a1 = ad[(i + 1) * n + k];
      const double a2 = ad[(i + 2) * n + k], a3 = ad[(i + 3) * n + k];
      const double* brow = bd.data() + k * m;
      for (std::size_t j = 0; j < m; ++j) {
        const double bj = brow[j];
        o0[j] += a0 * bj;
        o1[j] += a1 * bj;
        o2[j] += a2 * bj;
        o3[j] += a3 * bj;
      }
    }
  }
  for (; i < a.rows(); ++i) {
    double* orow = od.data() + i * m;
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = ad[i * n + k];
      const double* brow = bd.data() + k * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix matmul_transposed(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ShapeError(pair_message("matmul_transposed", a, b));
  // Few output columns: contiguous dot products. Otherwise transpose b and
  // use the row-streaming kernel. Both accumulate over k in ascending order.
  if (b.rows() >= 8) return matmul(a, b.transposed());
  Matrix out = Matrix::uninitialized(a.rows(), b.rows());
  const std::size_t n = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* arow = a.data().data() + i * n;
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* brow = b.data().data() + j * n;
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += arow[k] * brow[k];
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix transposed_matmul(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError(pair_message("transposed_matmul", a, b));
  // Narrow b: compute (b^T a)^T so the innermost loop runs over a's columns.
  if (b.cols() < 8 && a.cols() > b.cols()) return transposed_matmul(b, a).transposed();
  Matrix out(a.cols(), b.cols());
  const std::size_t m = b.cols();
  auto od = out.data();
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* brow = b.data().data() + k * m;
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      double* orow = od.data() + i * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += aki * brow[j];
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError(pair_message("add", a, b));
  Matrix out = a;
  auto od = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] += bd[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError(pair_message("subtract", a, b));
  Matrix out = a;
  auto od = out.data();
  auto bd = b.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] -= bd[i];
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out = a;
  for (double& v : out.data()) v *= s;
  return out;
}

Matrix add_row_broadcast(const Matrix& x, const Matrix& bias) {
  if (bias.rows() != 1 || bias.cols() != x.cols())
    throw ShapeError(pair_message("add_bias", x, bias));
  Matrix out = x;
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) += bias(0, c);
  return out;
}

Matrix column_sums(const Matrix& x) {
  Matrix out(1, x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) out(0, c) += x(r, c);
  return out;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw ShapeError(pair_message("max_abs_diff", a, b));
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace snake
