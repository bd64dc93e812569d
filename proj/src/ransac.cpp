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

#include "scseg/ransac.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/LU>

#include "scseg/random.hpp"
#include "scseg/regression.hpp"

namespace scseg {

namespace {

int CountInliers(const Eigen::VectorXd& f, const Eigen::MatrixXd& p, const Coefficients& alpha,
                 double eps_in) {
  const Eigen::VectorXd r = f - p * alpha;
  return static_cast<int>((r.array().abs() < eps_in).count());
}

}  // namespace

RansacResult RansacSegment(const PixelBlock& f, const BasisMatrix& p,
                           const RansacOptions& options) {
  if (f.n() != p.n()) throw ParameterError("RansacSegment: block and basis sizes differ");
  if (options.m_iter < 1) throw ParameterError("RansacSegment: m_iter must be >= 1");
  if (!(options.stop_ratio > 0.0 && options.stop_ratio <= 1.0)) {
    throw ParameterError("RansacSegment: stop_ratio must lie in (0, 1]");
  }
  if (!(options.eps_in > 0.0)) throw ParameterError("RansacSegment: eps_in must be positive");

  const Eigen::VectorXd& values = f.values();
  const Eigen::MatrixXd& basis = p.columns();
  const auto num_pixels = static_cast<int>(values.size());
  const int k = p.k();

  std::mt19937_64 rng(options.seed);
  std::vector<int> pool(static_cast<std::size_t>(num_pixels));
  std::iota(pool.begin(), pool.end(), 0);

  RansacResult result;
  result.consensus_sizes.reserve(static_cast<std::size_t>(options.m_iter));
  Coefficients best_alpha;
  int best = -1;
  Eigen::MatrixXd system(k, k);
  Eigen::VectorXd rhs(k);

  for (int it = 0; it < options.m_iter; ++it) {
    result.iterations_used = it + 1;
    // Partial Fisher-Yates: pool[0..k) becomes a uniform k-subset.
    for (int j = 0; j < k; ++j) {
      const auto pick = j + static_cast<int>(UniformBelow(
                                rng, static_cast<std::uint64_t>(num_pixels - j)));
      std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
      system.row(j) = basis.row(pool[static_cast<std::size_t>(j)]);
      rhs[j] = values[pool[static_cast<std::size_t>(j)]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
    if (!(lu.rcond() >= options.min_rcond)) {
      result.consensus_sizes.push_back(-1);
      continue;
    }
    Coefficients alpha = lu.solve(rhs);
    const int consensus = CountInliers(values, basis, alpha, options.eps_in);
    result.consensus_sizes.push_back(consensus);
    if (consensus > best) {
      best = consensus;
      best_alpha = std::move(alpha);
    }
    if (static_cast<double>(consensus) / num_pixels > options.stop_ratio) {
      result.early_stopped = true;
      break;
    }
  }
  if (best < 0) {
    throw DegenerateInputError("RansacSegment: all " + std::to_string(options.m_iter) +
                               " sampled systems were singular");
  }
  result.best_consensus = best;

  // Refit once on the winning consensus set.
  std::vector<Eigen::Index> inliers;
  inliers.reserve(static_cast<std::size_t>(best));
  const Eigen::VectorXd r = values - basis * best_alpha;
  for (int i = 0; i < num_pixels; ++i) {
    if (std::abs(r[i]) < options.eps_in) inliers.push_back(i);
  }
  result.alpha = best_alpha;
  if (static_cast<int>(inliers.size()) >= k) {
    try {
      result.alpha = LeastSquaresFitRows(values, basis, inliers);
    } catch (const DegenerateInputError&) {
      // Rank-deficient consensus set; keep the sample model.
    }
  }
  result.mask = InlierMask(values - basis * result.alpha, options.eps_in);
  result.inlier_ratio =
      static_cast<double>(result.mask.background_count()) / static_cast<double>(num_pixels);
  return result;
}

}  // namespace scseg
