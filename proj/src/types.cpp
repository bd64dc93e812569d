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

#include "scseg/types.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace scseg {

PixelBlock::PixelBlock(int n, Eigen::VectorXd values, Plane plane)
    : n_(n), values_(std::move(values)), plane_(plane) {
  if (n < 1) throw ParameterError("PixelBlock: side must be positive");
  if (values_.size() != static_cast<Eigen::Index>(n) * n) {
    throw ParameterError("PixelBlock: expected " + std::to_string(n * n) +
                         " values, got " + std::to_string(values_.size()));
  }
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 255.0) {
      throw ParameterError("PixelBlock: value " + std::to_string(v) +
                           " at index " + std::to_string(i) +
                           " outside [0, 255]");
    }
  }
}

PixelBlock PixelBlock::FromMatrix(const Eigen::MatrixXd& m, Plane plane) {
  if (m.rows() != m.cols()) throw ParameterError("PixelBlock: block must be square");
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
  return PixelBlock(static_cast<int>(m.rows()), std::move(v), plane);
}

PixelBlock PixelBlock::Constant(int n, double value, Plane plane) {
  return PixelBlock(n, Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n) * n, value),
                    plane);
}

Eigen::MatrixXd PixelBlock::ToMatrix() const {
  return Eigen::Map<const Eigen::MatrixXd>(values_.data(), n_, n_);
}

std::size_t ForegroundMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

ForegroundMask ForegroundMask::Crop(int row, int col, int rows, int cols) const {
  if (row < 0 || col < 0 || row + rows > rows_ || col + cols > cols_) {
    throw ParameterError("ForegroundMask::Crop: rectangle outside mask");
  }
  ForegroundMask out(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) out.set(r, c, (*this)(row + r, col + c));
  return out;
}

void ForegroundMask::Paste(const ForegroundMask& other, int row, int col) {
  if (row < 0 || col < 0 || row + other.rows() > rows_ || col + other.cols() > cols_) {
    throw ParameterError("ForegroundMask::Paste: rectangle outside mask");
  }
  for (int c = 0; c < other.cols(); ++c)
    for (int r = 0; r < other.rows(); ++r) set(row + r, col + c, other(r, c));
}

}  // namespace scseg
