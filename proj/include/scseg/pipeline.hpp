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

#ifndef SCSEG_PIPELINE_HPP_
#define SCSEG_PIPELINE_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/config.hpp"
#include "scseg/image.hpp"
#include "scseg/types.hpp"

namespace scseg {

enum class BlockMode { kPureBackground, kSmoothBackground, kTextOnConstant, kRobust, kSplit };

const char* ToString(BlockMode mode);

// Outcome of segmenting one block. For kSplit, `children` holds the four
// quadrants in raster order (top-left, top-right, bottom-left, bottom-right)
// and `mask` is their stitched masks; leaves have no children.
struct BlockDecision {
  BlockMode mode = BlockMode::kPureBackground;
  int row = 0;  // top-left pixel in image coordinates
  int col = 0;
  int n = 0;
  ForegroundMask mask;
  double inlier_ratio = 1.0;
  std::vector<BlockDecision> children;
};

// Luma plus optional chroma for one block.
struct BlockPlanes {
  PixelBlock luma;
  std::optional<PixelBlock> cb;
  std::optional<PixelBlock> cr;
};

BlockPlanes ExtractBlock(const ImagePlanes& planes, int row, int col, int n);

// Population standard deviation of the values below eps1.
bool IsPureBackground(const PixelBlock& f, double eps1);

// Every pixel predicted by the least-squares model with error below eps_in.
bool IsSmoothBackground(const PixelBlock& f, const BasisMatrix& p, double eps_in);

// Text over a constant background: fewer than t1 distinct (rounded) values
// and a range above r_min. The most frequent value is background (smallest
// value wins a tie), everything else foreground. Empty otherwise.
std::optional<ForegroundMask> ClassifyTextOnConstant(const PixelBlock& f, int t1, double r_min);

struct ChromaVerification {
  ForegroundMask mask;
  // Set when a plane had fewer background pixels than basis functions and
  // was not checked.
  bool cb_skipped = false;
  bool cr_skipped = false;
};

// Fits each chroma plane on the current background pixels and moves any
// background pixel whose residual is >= eps_in in either plane to the
// foreground. Never shrinks the foreground. No-op without chroma planes.
ChromaVerification VerifyChrominance(const BlockPlanes& planes, const ForegroundMask& mask,
                                     const BasisMatrix& p, double eps_in);

// Stages reported to a StageObserver, in evaluation order.
enum class Stage { kPureBackground, kSmoothBackground, kTextOnConstant, kCoreMethod, kChromaVerify };
using StageObserver = std::function<void(Stage, int row, int col, int n)>;

// The overall algorithm on one block: pure background, smooth background,
// text on constant background, then the configured core method followed by
// chroma verification; splits into quadrants while the inlier ratio is not
// above eps2 and the side is above n_min. `row`/`col` locate the block in the
// image and seed the random sampling.
BlockDecision SegmentBlock(const BlockPlanes& planes, const SegmentationConfig& cfg, int row = 0,
                           int col = 0, const StageObserver* observer = nullptr);

struct ImageSegmentation {
  ForegroundMask mask;
  std::vector<BlockDecision> tiles;  // raster order of n_max tiles
};

// Tiles the image into n_max blocks and segments them in parallel with
// OpenMP. threads <= 0 uses the OpenMP default. The output does not depend on
// the thread count. Throws InputError if a side is not a multiple of n_max.
ImageSegmentation SegmentImage(const ImagePlanes& planes, const SegmentationConfig& cfg,
                               int threads = 0);
ImageSegmentation SegmentImage(const Image& image, const SegmentationConfig& cfg, int threads = 0);

// Single-threaded reference for SegmentImage.
ImageSegmentation SegmentImageSerial(const ImagePlanes& planes, const SegmentationConfig& cfg);

// Least-squares fit on background pixels; foreground pixels are replaced by
// the model prediction clamped to [0, 255]. Throws DegenerateInputError when
// fewer background pixels than basis functions remain.
PixelBlock ReconstructBackground(const PixelBlock& f, const ForegroundMask& mask,
                                 const BasisMatrix& p);

// ReconstructBackground over every leaf block of a segmentation. Leaves with
// too few background pixels keep their original values; their number is
// returned through `skipped`.
Eigen::MatrixXd ReconstructImageBackground(const Eigen::MatrixXd& luma,
                                           const ImageSegmentation& seg,
                                           const SegmentationConfig& cfg, int* skipped = nullptr);

// Leaf counts per mode plus the number of split nodes.
struct ModeStatistics {
  std::array<int, 5> counts{};  // indexed by BlockMode
  int leaves() const;
};
ModeStatistics CollectModeStatistics(const ImageSegmentation& seg);
// CSV with header "mode,blocks,percent"; percent is over leaf blocks, the
// split row reports the number of split nodes.
std::string FormatModeStatisticsCsv(const ModeStatistics& stats);

}  // namespace scseg

#endif  // SCSEG_PIPELINE_HPP_
