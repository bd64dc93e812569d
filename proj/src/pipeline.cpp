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

#include "scseg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "scseg/random.hpp"
#include "scseg/ransac.hpp"
#include "scseg/regression.hpp"
#include "scseg/sparse.hpp"

namespace scseg {

namespace {

void Notify(const StageObserver* observer, Stage stage, int row, int col, int n) {
  if (observer != nullptr && *observer) (*observer)(stage, row, col, n);
}

BlockDecision Leaf(BlockMode mode, int row, int col, int n, ForegroundMask mask) {
  BlockDecision d;
  d.mode = mode;
  d.row = row;
  d.col = col;
  d.n = n;
  d.inlier_ratio = static_cast<double>(mask.background_count()) / static_cast<double>(mask.size());
  d.mask = std::move(mask);
  return d;
}

// Mask produced by the configured core method on the luma plane.
ForegroundMask RunCoreMethod(const PixelBlock& luma, const BasisMatrix& p,
                             const SegmentationConfig& cfg, int row, int col) {
  switch (cfg.method) {
    case Method::kRansac: {
      RansacOptions opts;
      opts.eps_in = cfg.eps_in;
      opts.m_iter = cfg.m_iter;
      opts.stop_ratio = cfg.stop_ratio;
      opts.seed = BlockSeed(cfg.seed, row, col, luma.n());
      return RansacSegment(luma, p, opts).mask;
    }
    case Method::kSd:
      return SdSegment(luma, p, cfg).mask;
    case Method::kLad: {
      LadOptions opts;
      opts.max_iter = cfg.lad_max_iter;
      opts.tol = cfg.lad_tol;
      const LadResult lad = LadFit(luma, p, opts);
      return InlierMask(Residuals(luma, p, lad.alpha), cfg.eps_in);
    }
    case Method::kLsf:
      return InlierMask(Residuals(luma, p, LeastSquaresFit(luma, p)), cfg.eps_in);
  }
  throw ParameterError("unknown method");
}

void CollectLeaves(const BlockDecision& d, std::vector<const BlockDecision*>& out) {
  if (d.children.empty()) {
    out.push_back(&d);
    return;
  }
  for (const BlockDecision& c : d.children) CollectLeaves(c, out);
}

void CountModes(const BlockDecision& d, ModeStatistics& stats) {
  ++stats.counts[static_cast<std::size_t>(d.mode)];
  for (const BlockDecision& c : d.children) CountModes(c, stats);
}

void CheckTiling(const ImagePlanes& planes, const SegmentationConfig& cfg) {
  cfg.Validate();
  if (planes.rows() == 0 || planes.cols() == 0) throw InputError("empty image");
  if (planes.rows() % cfg.n_max != 0 || planes.cols() % cfg.n_max != 0) {
    throw InputError("image is " + std::to_string(planes.cols()) + "x" +
                     std::to_string(planes.rows()) + "; both sides must be multiples of " +
                     std::to_string(cfg.n_max) + " (pad the image, e.g. with --pad)");
  }
}

ImageSegmentation Stitch(const ImagePlanes& planes, std::vector<BlockDecision> tiles) {
  ImageSegmentation seg;
  seg.mask = ForegroundMask(planes.rows(), planes.cols());
  for (const BlockDecision& t : tiles) seg.mask.Paste(t.mask, t.row, t.col);
  seg.tiles = std::move(tiles);
  return seg;
}

}  // namespace

const char* ToString(BlockMode mode) {
  switch (mode) {
    case BlockMode::kPureBackground:
      return "pure_background";
    case BlockMode::kSmoothBackground:
      return "smooth_background";
    case BlockMode::kTextOnConstant:
      return "text_on_constant";
    case BlockMode::kRobust:
      return "robust";
    case BlockMode::kSplit:
      return "split";
  }
  return "?";
}

BlockPlanes ExtractBlock(const ImagePlanes& planes, int row, int col, int n) {
  BlockPlanes b;
  b.luma = PixelBlock::FromMatrix(planes.luma.block(row, col, n, n), Plane::kLuma);
  if (planes.has_chroma()) {
    b.cb = PixelBlock::FromMatrix(planes.cb->block(row, col, n, n), Plane::kChromaB);
    b.cr = PixelBlock::FromMatrix(planes.cr->block(row, col, n, n), Plane::kChromaR);
  }
  return b;
}

bool IsPureBackground(const PixelBlock& f, double eps1) {
  const Eigen::VectorXd& v = f.values();
  const double mean = v.mean();
  const double var = (v.array() - mean).square().mean();
  return std::sqrt(var) < eps1;
}

bool IsSmoothBackground(const PixelBlock& f, const BasisMatrix& p, double eps_in) {
  const Eigen::VectorXd r = Residuals(f, p, LeastSquaresFit(f, p));
  return r.cwiseAbs().maxCoeff() < eps_in;
}

std::optional<ForegroundMask> ClassifyTextOnConstant(const PixelBlock& f, int t1, double r_min) {
  const Eigen::VectorXd& v = f.values();
  std::map<long, int> histogram;
  for (Eigen::Index i = 0; i < v.size(); ++i) ++histogram[std::lround(v[i])];
  if (static_cast<int>(histogram.size()) >= t1) return std::nullopt;
  if (!(v.maxCoeff() - v.minCoeff() > r_min)) return std::nullopt;
  // std::map iterates in increasing value order, so the first maximum is the
  // smallest modal value.
  long mode = histogram.begin()->first;
  int best = 0;
  for (const auto& [value, count] : histogram) {
    if (count > best) {
      best = count;
      mode = value;
    }
  }
  ForegroundMask mask(f.n());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    mask.set(static_cast<std::size_t>(i), std::lround(v[i]) != mode);
  }
  return mask;
}

ChromaVerification VerifyChrominance(const BlockPlanes& planes, const ForegroundMask& mask,
                                     const BasisMatrix& p, double eps_in) {
  ChromaVerification out{mask};
  if (!planes.cb && !planes.cr) return out;
  std::vector<Eigen::Index> background;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) background.push_back(static_cast<Eigen::Index>(i));
  }
  auto check = [&](const std::optional<PixelBlock>& plane, bool& skipped) {
    if (!plane) return;
    if (plane->n() != p.n()) throw ParameterError("VerifyChrominance: plane size mismatch");
    if (static_cast<int>(background.size()) < p.k()) {
      skipped = true;
      return;
    }
    Coefficients alpha;
    try {
      alpha = LeastSquaresFitRows(plane->values(), p.columns(), background);
    } catch (const DegenerateInputError&) {
      skipped = true;
      return;
    }
    const Eigen::VectorXd r = plane->values() - p.columns() * alpha;
    for (Eigen::Index i : background) {
      if (std::abs(r[i]) >= eps_in) out.mask.set(static_cast<std::size_t>(i), true);
    }
  };
  check(planes.cb, out.cb_skipped);
  check(planes.cr, out.cr_skipped);
  return out;
}

BlockDecision SegmentBlock(const BlockPlanes& planes, const SegmentationConfig& cfg, int row,
                           int col, const StageObserver* observer) {
  const PixelBlock& luma = planes.luma;
  const int n = luma.n();
  if (n < cfg.n_min || n > cfg.n_max) {
    throw ParameterError("SegmentBlock: side " + std::to_string(n) + " outside [n_min, n_max]");
  }
  const auto basis = CachedBasis(cfg.basis, n, cfg.k);

  Notify(observer, Stage::kPureBackground, row, col, n);
  if (IsPureBackground(luma, cfg.eps1)) {
    return Leaf(BlockMode::kPureBackground, row, col, n, ForegroundMask(n));
  }
  Notify(observer, Stage::kSmoothBackground, row, col, n);
  if (IsSmoothBackground(luma, *basis, cfg.eps_in)) {
    return Leaf(BlockMode::kSmoothBackground, row, col, n, ForegroundMask(n));
  }
  Notify(observer, Stage::kTextOnConstant, row, col, n);
  if (auto text = ClassifyTextOnConstant(luma, cfg.t1, cfg.r_min)) {
    return Leaf(BlockMode::kTextOnConstant, row, col, n, std::move(*text));
  }

  Notify(observer, Stage::kCoreMethod, row, col, n);
  ForegroundMask mask = RunCoreMethod(luma, *basis, cfg, row, col);
  Notify(observer, Stage::kChromaVerify, row, col, n);
  mask = VerifyChrominance(planes, mask, *basis, cfg.eps_in).mask;

  BlockDecision leaf = Leaf(BlockMode::kRobust, row, col, n, std::move(mask));
  if (leaf.inlier_ratio > cfg.eps2 || n <= cfg.n_min) return leaf;

  BlockDecision split;
  split.mode = BlockMode::kSplit;
  split.row = row;
  split.col = col;
  split.n = n;
  split.inlier_ratio = leaf.inlier_ratio;
  split.mask = ForegroundMask(n);
  const int half = n / 2;
  for (int q = 0; q < 4; ++q) {
    const int dr = (q / 2) * half;
    const int dc = (q % 2) * half;
    BlockPlanes child;
    child.luma = PixelBlock::FromMatrix(luma.ToMatrix().block(dr, dc, half, half), Plane::kLuma);
    if (planes.cb) {
      child.cb = PixelBlock::FromMatrix(planes.cb->ToMatrix().block(dr, dc, half, half),
                                        Plane::kChromaB);
    }
    if (planes.cr) {
      child.cr = PixelBlock::FromMatrix(planes.cr->ToMatrix().block(dr, dc, half, half),
                                        Plane::kChromaR);
    }
    split.children.push_back(SegmentBlock(child, cfg, row + dr, col + dc, observer));
    split.mask.Paste(split.children.back().mask, dr, dc);
  }
  return split;
}

ImageSegmentation SegmentImageSerial(const ImagePlanes& planes, const SegmentationConfig& cfg) {
  CheckTiling(planes, cfg);
  const int tile_rows = planes.rows() / cfg.n_max;
  const int tile_cols = planes.cols() / cfg.n_max;
  std::vector<BlockDecision> tiles;
  tiles.reserve(static_cast<std::size_t>(tile_rows) * tile_cols);
  for (int tr = 0; tr < tile_rows; ++tr) {
    for (int tc = 0; tc < tile_cols; ++tc) {
      const int row = tr * cfg.n_max;
      const int col = tc * cfg.n_max;
      tiles.push_back(SegmentBlock(ExtractBlock(planes, row, col, cfg.n_max), cfg, row, col));
    }
  }
  return Stitch(planes, std::move(tiles));
}

ImageSegmentation SegmentImage(const ImagePlanes& planes, const SegmentationConfig& cfg,
                               int threads) {
  CheckTiling(planes, cfg);
  const int tile_rows = planes.rows() / cfg.n_max;
  const int tile_cols = planes.cols() / cfg.n_max;
  const int num_tiles = tile_rows * tile_cols;
  std::vector<BlockDecision> tiles(static_cast<std::size_t>(num_tiles));
  // Exceptions must not escape an OpenMP region; keep the first by tile index.
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(num_tiles));
#ifdef _OPENMP
  const int num_threads = threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(num_threads)
  for (int t = 0; t < num_tiles; ++t) {
    const int row = (t / tile_cols) * cfg.n_max;
    const int col = (t % tile_cols) * cfg.n_max;
    try {
      tiles[static_cast<std::size_t>(t)] =
          SegmentBlock(ExtractBlock(planes, row, col, cfg.n_max), cfg, row, col);
    } catch (...) {
      errors[static_cast<std::size_t>(t)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return Stitch(planes, std::move(tiles));
}

ImageSegmentation SegmentImage(const Image& image, const SegmentationConfig& cfg, int threads) {
  return SegmentImage(ToPlanes(image), cfg, threads);
}

PixelBlock ReconstructBackground(const PixelBlock& f, const ForegroundMask& mask,
                                 const BasisMatrix& p) {
  if (f.n() != p.n() || mask.rows() != f.n() || mask.cols() != f.n()) {
    throw ParameterError("ReconstructBackground: dimension mismatch");
  }
  std::vector<Eigen::Index> background;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) background.push_back(static_cast<Eigen::Index>(i));
  }
  if (static_cast<int>(background.size()) < p.k()) {
    throw DegenerateInputError("ReconstructBackground: " + std::to_string(background.size()) +
                               " background pixels for " + std::to_string(p.k()) +
                               " basis functions");
  }
  if (background.size() == mask.size()) return f;
  const Coefficients alpha = LeastSquaresFitRows(f.values(), p.columns(), background);
  const Eigen::VectorXd prediction = p.columns() * alpha;
  Eigen::VectorXd out = f.values();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      const auto idx = static_cast<Eigen::Index>(i);
      out[idx] = std::clamp(prediction[idx], 0.0, 255.0);
    }
  }
  return PixelBlock(f.n(), std::move(out), f.plane());
}

Eigen::MatrixXd ReconstructImageBackground(const Eigen::MatrixXd& luma,
                                           const ImageSegmentation& seg,
                                           const SegmentationConfig& cfg, int* skipped) {
  Eigen::MatrixXd out = luma;
  int degenerate = 0;
  std::vector<const BlockDecision*> leaves;
  for (const BlockDecision& t : seg.tiles) CollectLeaves(t, leaves);
  for (const BlockDecision* leaf : leaves) {
    if (leaf->mask.count() == 0) continue;
    const PixelBlock f = PixelBlock::FromMatrix(luma.block(leaf->row, leaf->col, leaf->n, leaf->n));
    try {
      const PixelBlock filled =
          ReconstructBackground(f, leaf->mask, *CachedBasis(cfg.basis, leaf->n, cfg.k));
      out.block(leaf->row, leaf->col, leaf->n, leaf->n) = filled.ToMatrix();
    } catch (const DegenerateInputError&) {
      ++degenerate;
    }
  }
  if (skipped != nullptr) *skipped = degenerate;
  return out;
}

int ModeStatistics::leaves() const {
  int total = 0;
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (static_cast<BlockMode>(m) != BlockMode::kSplit) total += counts[m];
  }
  return total;
}

ModeStatistics CollectModeStatistics(const ImageSegmentation& seg) {
  ModeStatistics stats;
  for (const BlockDecision& t : seg.tiles) CountModes(t, stats);
  return stats;
}

std::string FormatModeStatisticsCsv(const ModeStatistics& stats) {
  std::ostringstream out;
  out << "mode,blocks,percent\n";
  const int leaves = stats.leaves();
  for (std::size_t m = 0; m < stats.counts.size(); ++m) {
    const auto mode = static_cast<BlockMode>(m);
    out << ToString(mode) << "," << stats.counts[m] << ",";
    if (mode == BlockMode::kSplit || leaves == 0) {
      out << "\n";
    } else {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * stats.counts[m] / leaves);
      out << buf << "\n";
    }
  }
  return out.str();
}

}  // namespace scseg
