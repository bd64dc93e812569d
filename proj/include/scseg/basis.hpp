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

#ifndef SCSEG_BASIS_HPP_
#define SCSEG_BASIS_HPP_

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "scseg/types.hpp"

namespace scseg {

enum class BasisKind { kDct, kOrthoPoly };

const char* ToString(BasisKind kind);

// A pair of frequency (DCT) or degree (polynomial) indices. `u` pairs with the
// row coordinate, `v` with the column coordinate.
struct FrequencyIndex {
  int u = 0;
  int v = 0;
  friend bool operator==(const FrequencyIndex&, const FrequencyIndex&) = default;
};

// N^2 x K matrix whose columns are vectorized 2D basis functions, ordered by
// the zigzag rule. Immutable once built; safe to share between threads.
class BasisMatrix {
 public:
  BasisMatrix(int n, BasisKind kind, std::vector<FrequencyIndex> order,
              Eigen::MatrixXd columns);

  int n() const { return n_; }
  int k() const { return static_cast<int>(columns_.cols()); }
  BasisKind kind() const { return kind_; }
  const std::vector<FrequencyIndex>& order() const { return order_; }
  const Eigen::MatrixXd& columns() const { return columns_; }

  // Gram matrix within 1e-9 of identity, checked at construction. Least
  // squares then reduces to a projection.
  bool orthonormal() const { return orthonormal_; }

 private:
  int n_;
  BasisKind kind_;
  std::vector<FrequencyIndex> order_;
  Eigen::MatrixXd columns_;
  bool orthonormal_ = false;
};

// All n^2 index pairs by anti-diagonal, JPEG direction:
// (0,0) (0,1) (1,0) (2,0) (1,1) (0,2) ...
std::vector<FrequencyIndex> ZigzagOrder(int n);

// 2D DCT-II basis, beta_0 = sqrt(1/n), beta_m = sqrt(2/n).
BasisMatrix DctBasis(int n, int k);

// 2D orthonormal polynomials: x^m sampled at x = 1..n, orthonormalized by
// modified Gram-Schmidt with one re-orthogonalization pass, then combined by
// outer products in zigzag order of (degree_u, degree_v).
BasisMatrix OrthoPolyBasis(int n, int k);

BasisMatrix MakeBasis(BasisKind kind, int n, int k);

// Process-wide cache keyed by (kind, n, k). Thread-safe.
std::shared_ptr<const BasisMatrix> CachedBasis(BasisKind kind, int n, int k);

struct RmseRow {
  int k = 0;
  BasisKind kind = BasisKind::kDct;
  double rmse = 0.0;
};

// Mean over blocks of the per-block least-squares reconstruction RMSE, for
// every k in 1..k_max and every requested kind. Rows are ordered by k, then
// by the order of `kinds`.
std::vector<RmseRow> BasisRmseStudy(const std::vector<PixelBlock>& blocks, int k_max,
                                    const std::vector<BasisKind>& kinds = {
                                        BasisKind::kDct, BasisKind::kOrthoPoly});

}  // namespace scseg

#endif  // SCSEG_BASIS_HPP_
