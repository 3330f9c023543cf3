// scar/tensor.h

// Copyright 2026  The scar-efd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "scar/error.h"

namespace scar {

using Shape = std::vector<std::size_t>;

std::string shape_to_string(const Shape& shape);
std::size_t shape_numel(const Shape& shape);

// Dense row-major array. Real is float for training and double for gradient
// checking. The gradient slot is only populated for parameters after a
// backward pass has been collected into them.
template <typename Real>
class Tensor {
 public:
  using value_type = Real;

  Tensor() = default;

  explicit Tensor(Shape shape, Real fill = Real(0))
      : shape_(std::move(shape)), data_(checked_numel(shape_), fill) {}

  Tensor(Shape shape, std::vector<Real> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (checked_numel(shape_) != data_.size()) {
      throw ShapeError("tensor of shape " + shape_to_string(shape_) +
                       " cannot hold " + std::to_string(data_.size()) +
                       " values");
    }
  }

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t numel() const { return data_.size(); }

  std::span<Real> data() { return data_; }
  std::span<const Real> data() const { return data_; }
  std::vector<Real>& values() { return data_; }
  const std::vector<Real>& values() const { return data_; }

  Real& operator[](std::size_t i) { return data_[i]; }
  Real operator[](std::size_t i) const { return data_[i]; }

  Real& at(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  Real at(std::size_t i, std::size_t j) const {
    return data_[i * shape_[1] + j];
  }
  Real& at(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  Real at(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  bool requires_grad() const { return requires_grad_; }
  void set_requires_grad(bool value) { requires_grad_ = value; }

  bool has_grad() const { return !grad_.empty(); }
  std::span<Real> grad() { return grad_; }
  std::span<const Real> grad() const { return grad_; }
  void zero_grad() { grad_.assign(data_.size(), Real(0)); }
  void set_grad(std::vector<Real> grad) {
    if (grad.size() != data_.size()) {
      throw ShapeError("gradient of size " + std::to_string(grad.size()) +
                       " for tensor of shape " + shape_to_string(shape_));
    }
    grad_ = std::move(grad);
  }
  void clear_grad() { grad_.clear(); }

  // Reinterprets the same values under a new shape of equal size.
  Tensor reshaped(Shape shape) const {
    return Tensor(std::move(shape), data_);
  }

  template <typename Other>
  Tensor<Other> cast() const {
    std::vector<Other> out(data_.begin(), data_.end());
    Tensor<Other> t(shape_, std::move(out));
    t.set_requires_grad(requires_grad_);
    return t;
  }

 private:
  static std::size_t checked_numel(const Shape& shape) {
    for (std::size_t d : shape) {
      if (d == 0) {
        throw ShapeError("tensor dimensions must be positive, got " +
                         shape_to_string(shape));
      }
    }
    return shape_numel(shape);
  }

  Shape shape_;
  std::vector<Real> data_;
  bool requires_grad_ = false;
  std::vector<Real> grad_;
};

}  // namespace scar
