// Copyright 2026 The KBC Tagger Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KBC_NUMCORE_TENSOR_H_
#define KBC_NUMCORE_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace kbc::numcore {

// Dense row-major array of doubles. Rank 1 tensors of shape [d] are viewed
// as 1 x d matrices by the matrix accessors; a scalar has shape [1].
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  Tensor(std::vector<std::size_t> shape, std::vector<double> values);

  static Tensor Scalar(double v) { return Tensor({1}, {v}); }
  static Tensor Vector(std::vector<double> values);
  // Rows given as nested initializer lists; all rows must have equal length.
  static Tensor Matrix(std::initializer_list<std::initializer_list<double>> rows);
  static Tensor Zeros(std::size_t rows, std::size_t cols) {
    return Tensor({rows, cols});
  }

  const std::vector<std::size_t> &shape() const { return shape_; }
  std::size_t size() const { return values_.size(); }
  std::size_t rank() const { return shape_.size(); }
  std::size_t rows() const;
  std::size_t cols() const;
  bool empty() const { return values_.empty(); }

  double &operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double &at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const {
    return values_[r * cols() + c];
  }

  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }
  const std::vector<double> &values() const { return values_; }

  std::span<double> row(std::size_t r) {
    return std::span<double>(values_).subspan(r * cols(), cols());
  }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values_).subspan(r * cols(), cols());
  }

  void Fill(double v);
  bool SameShape(const Tensor &other) const { return shape_ == other.shape_; }
  bool AllFinite() const;
  std::string ShapeString() const;

  friend bool operator==(const Tensor &a, const Tensor &b) {
    return a.shape_ == b.shape_ && a.values_ == b.values_;
  }

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

// Numerically stable logistic function.
double Sigmoid(double z);

// Softmax of each row, computed with max subtraction.
Tensor SoftmaxRows(const Tensor &logits);

}  // namespace kbc::numcore

#endif  // KBC_NUMCORE_TENSOR_H_
