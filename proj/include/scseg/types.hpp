// Copyright 2026 The scseg Authors.
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

#ifndef SCSEG_TYPES_HPP_
#define SCSEG_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace scseg {

// Error hierarchy. Every failure raised by the library derives from Error so
// front ends can map it to a single exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid sizes, thresholds or mismatched dimensions.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// The input cannot support the requested fit (too few pixels, all samples
// singular, ...).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class NumericalDivergenceError : public Error {
 public:
  NumericalDivergenceError(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Unreadable or unsupported image files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Missing or mismatched dataset items.
class DatasetError : public Error {
 public:
  using Error::Error;
};

using Coefficients = Eigen::VectorXd;

enum class Plane { kLuma, kChromaB, kChromaR };

// One N x N block of an image plane. Values are stored as the column-major
// vectorization of the block: index = row + n * col.
class PixelBlock {
 public:
  PixelBlock() = default;
  // Throws ParameterError unless values.size() == n * n and every value is
  // finite and inside [0, 255].
  PixelBlock(int n, Eigen::VectorXd values, Plane plane = Plane::kLuma);

  static PixelBlock FromMatrix(const Eigen::MatrixXd& m,
                               Plane plane = Plane::kLuma);
  static PixelBlock Constant(int n, double value, Plane plane = Plane::kLuma);

  int n() const { return n_; }
  Plane plane() const { return plane_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }

  double operator()(int row, int col) const { return values_[row + n_ * col]; }
  Eigen::MatrixXd ToMatrix() const;

 private:
  int n_ = 0;
  Eigen::VectorXd values_;
  Plane plane_ = Plane::kLuma;
};

// Boolean map, true = foreground. Column-major like PixelBlock so that bit i
// refers to the same pixel as PixelBlock::values()[i]. Also used for whole
// images, hence rows and cols rather than a single side.
class ForegroundMask {
 public:
  ForegroundMask() = default;
  ForegroundMask(int rows, int cols, bool value = false)
      : rows_(rows), cols_(cols),
        bits_(static_cast<std::size_t>(rows) * cols, value ? 1 : 0) {}
  explicit ForegroundMask(int n, bool value = false)
      : ForegroundMask(n, n, value) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  // Side length of a square mask.
  int n() const { return rows_; }
  std::size_t size() const { return bits_.size(); }

  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  bool operator()(int row, int col) const {
    return bits_[static_cast<std::size_t>(row) + static_cast<std::size_t>(rows_) * col] != 0;
  }
  void set(int row, int col, bool v) {
    bits_[static_cast<std::size_t>(row) + static_cast<std::size_t>(rows_) * col] = v ? 1 : 0;
  }

  std::size_t count() const;
  std::size_t background_count() const { return size() - count(); }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  // Copy of the sub-rectangle starting at (row, col).
  ForegroundMask Crop(int row, int col, int rows, int cols) const;
  // Writes `other` into this mask with its top-left corner at (row, col).
  void Paste(const ForegroundMask& other, int row, int col);

  friend bool operator==(const ForegroundMask&, const ForegroundMask&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace scseg

#endif  // SCSEG_TYPES_HPP_
