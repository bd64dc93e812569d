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

#ifndef SCSEG_RANSAC_HPP_
#define SCSEG_RANSAC_HPP_

#include <cstdint>
#include <vector>

#include "scseg/basis.hpp"
#include "scseg/types.hpp"

namespace scseg {

struct RansacOptions {
  double eps_in = 10.0;
  int m_iter = 200;
  // Stop as soon as a consensus set covers more than this fraction.
  double stop_ratio = 0.95;
  // Sample systems with reciprocal condition below this are redrawn.
  double min_rcond = 1e-12;
  std::uint64_t seed = 0;
};

struct RansacResult {
  ForegroundMask mask;
  Coefficients alpha;
  double inlier_ratio = 0.0;
  int iterations_used = 0;
  bool early_stopped = false;
  // Consensus size of every iteration, -1 where the sample was singular.
  std::vector<int> consensus_sizes;
  // Size of the winning consensus set before the final refit.
  int best_consensus = 0;
};

// Robust-regression segmentation of one block:
//   draw K distinct pixels, interpolate the K-term model through them, count
//   pixels predicted within eps_in, keep the largest consensus set (first
//   found on ties), stop early above stop_ratio; finally refit by least
//   squares on the winning inliers once and classify every pixel again.
// Throws DegenerateInputError if every sample was singular.
RansacResult RansacSegment(const PixelBlock& f, const BasisMatrix& p,
                           const RansacOptions& options = {});

}  // namespace scseg

#endif  // SCSEG_RANSAC_HPP_
