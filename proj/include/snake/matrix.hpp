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
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace snake {

namespace detail {
// Allocator that default-initializes (leaves doubles unset) on resize, so
// buffers that are about to be overwritten skip the zero fill.
template <typename T>
struct DefaultInitAllocator : std::allocator<T> {
  template <typename U>
  struct rebind {
    using other = DefaultInitAllocator<U>;
  };
  using std::allocator<T>::allocator;
  template <typename U>
  void construct(U* p) noexcept {
    ::new (static_cast<void*>(p)) U;
  }
  template <typename U, typename... Args>
  void construct(U* p, Args&&... args) {
    ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
  }
};
}  // namespace detail

// Dense row-major matrix of doubles. Both dimensions are at least one.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  // Contents unspecified; every element must be written before use.
  static Matrix uninitialized(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix column(std::span<const double> values);
  static Matrix row(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<const double> row_view(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

  // "rows x cols", used in error messages.
  std::string shape_string() const;
  bool same_shape(const Matrix& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  Matrix transposed() const;
  bool all_finite() const noexcept;

  // Exact element-wise equality (bit-identity for non-NaN values).
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  struct NoFill {};
  Matrix(std::size_t rows, std::size_t cols, NoFill);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double, detail::DefaultInitAllocator<double>> data_;
};

// Standard product; throws ShapeError when a.cols() != b.rows().
Matrix matmul(const Matrix& a, const Matrix& b);
// a * b^T without materialising the transpose.
Matrix matmul_transposed(const Matrix& a, const Matrix& b);
// a^T * b without materialising the transpose.
Matrix transposed_matmul(const Matrix& a, const Matrix& b);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
// Adds a 1 x cols row vector to every row of x.
Matrix add_row_broadcast(const Matrix& x, const Matrix& bias);
// Column sums as a 1 x cols row vector.
Matrix column_sums(const Matrix& x);

double frobenius_norm(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace snake
