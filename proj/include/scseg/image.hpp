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

#ifndef SCSEG_IMAGE_HPP_
#define SCSEG_IMAGE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "scseg/types.hpp"

namespace scseg {

// 8-bit image, 1 (gray) or 3 (RGB) interleaved channels, row-major.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {}

  std::uint8_t& at(int row, int col, int ch = 0) {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  std::uint8_t at(int row, int col, int ch = 0) const {
    return data[(static_cast<std::size_t>(row) * width + col) * channels + ch];
  }
  friend bool operator==(const Image&, const Image&) = default;
};

// PNG (8-bit gray, gray+alpha, RGB, RGBA or palette; alpha is dropped) or
// binary PGM/PPM with maxval 255. Throws InputError otherwise.
Image ReadImage(const std::string& path);

// Format chosen by extension: .pgm/.ppm write netpbm, anything else PNG.
void WriteImage(const std::string& path, const Image& image);

// PNG encoding in memory; byte-identical for identical images.
std::vector<std::uint8_t> EncodePng(const Image& image);

// Luma and, for color input, both chroma planes as rows x cols matrices.
struct ImagePlanes {
  Eigen::MatrixXd luma;
  std::optional<Eigen::MatrixXd> cb;
  std::optional<Eigen::MatrixXd> cr;

  int rows() const { return static_cast<int>(luma.rows()); }
  int cols() const { return static_cast<int>(luma.cols()); }
  bool has_chroma() const { return cb.has_value() && cr.has_value(); }
};

// Full-range BT.601: Y = .299 R + .587 G + .114 B,
// Cb = 128 - .168736 R - .331264 G + .5 B, Cr = 128 + .5 R - .418688 G - .081312 B,
// clamped to [0, 255].
ImagePlanes ToPlanes(const Image& image);

// Edge-replicates to the next multiple of `multiple` in both directions.
Image PadToMultiple(const Image& image, int multiple);

// 0 = background, 255 = foreground, single channel.
Image MaskToImage(const ForegroundMask& mask);
// Any nonzero value is foreground. Uses the first channel.
ForegroundMask ImageToMask(const Image& image);

// Rounds and clamps to [0, 255].
Image MatrixToImage(const Eigen::MatrixXd& m);

}  // namespace scseg

#endif  // SCSEG_IMAGE_HPP_
