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

#include "scseg/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

namespace scseg {

namespace {

void CheckNk(int n, int k, const char* who) {
  if (n < 1 || k < 1 || k > n * n) {
    throw ParameterError(std::string(who) + ": need 1 <= k <= n^2, got n=" +
                         std::to_string(n) + " k=" + std::to_string(k));
  }
}

// Columns of `basis1d` are 1D bases indexed by frequency/degree; build the
// first k outer products in zigzag order.
BasisMatrix OuterProductBasis(int n, int k, BasisKind kind, const Eigen::MatrixXd& basis1d) {
  std::vector<FrequencyIndex> order = ZigzagOrder(n);
  order.resize(static_cast<std::size_t>(k));
  Eigen::MatrixXd cols(static_cast<Eigen::Index>(n) * n, k);
  for (int j = 0; j < k; ++j) {
    const auto [u, v] = order[static_cast<std::size_t>(j)];
    Eigen::MatrixXd outer = basis1d.col(u) * basis1d.col(v).transpose();
    cols.col(j) = Eigen::Map<const Eigen::VectorXd>(outer.data(), outer.size());
  }
  return BasisMatrix(n, kind, std::move(order), std::move(cols));
}

}  // namespace

const char* ToString(BasisKind kind) {
  switch (kind) {
    case BasisKind::kDct:
      return "dct";
    case BasisKind::kOrthoPoly:
      return "poly";
  }
  return "?";
}

BasisMatrix::BasisMatrix(int n, BasisKind kind, std::vector<FrequencyIndex> order,
                         Eigen::MatrixXd columns)
    : n_(n), kind_(kind), order_(std::move(order)), columns_(std::move(columns)) {
  if (columns_.rows() != static_cast<Eigen::Index>(n) * n ||
      static_cast<Eigen::Index>(order_.size()) != columns_.cols()) {
    throw ParameterError("BasisMatrix: inconsistent dimensions");
  }
  const Eigen::MatrixXd gram = columns_.transpose() * columns_;
  orthonormal_ = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-9;
}

std::vector<FrequencyIndex> ZigzagOrder(int n) {
  if (n < 1) throw ParameterError("ZigzagOrder: n must be positive");
  std::vector<FrequencyIndex> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int s = 0; s <= 2 * (n - 1); ++s) {
    const int lo = std::max(0, s - (n - 1));
    const int hi = std::min(s, n - 1);
    if (s % 2 == 1) {
      for (int u = lo; u <= hi; ++u) out.push_back({u, s - u});
    } else {
      for (int u = hi; u >= lo; --u) out.push_back({u, s - u});
    }
  }
  return out;
}

BasisMatrix DctBasis(int n, int k) {
  CheckNk(n, k, "DctBasis");
  Eigen::MatrixXd c(n, n);
  const double b0 = std::sqrt(1.0 / n);
  const double b1 = std::sqrt(2.0 / n);
  for (int u = 0; u < n; ++u) {
    for (int x = 0; x < n; ++x) {
      c(x, u) = (u == 0 ? b0 : b1) *
                std::cos((2.0 * x + 1.0) * std::numbers::pi * u / (2.0 * n));
    }
  }
  return OuterProductBasis(n, k, BasisKind::kDct, c);
}

BasisMatrix OrthoPolyBasis(int n, int k) {
  CheckNk(n, k, "OrthoPolyBasis");
  // Only degrees reachable by the first k zigzag pairs are needed; building
  // all n would overflow x^m for large n.
  int max_degree = 0;
  const std::vector<FrequencyIndex> order = ZigzagOrder(n);
  for (int j = 0; j < k; ++j) {
    max_degree = std::max({max_degree, order[static_cast<std::size_t>(j)].u,
                           order[static_cast<std::size_t>(j)].v});
  }
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m <= max_degree; ++m) {
    Eigen::VectorXd v(n);
    for (int x = 0; x < n; ++x) v[x] = std::pow(static_cast<double>(x + 1), m);
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < m; ++j) v -= q.col(j).dot(v) * q.col(j);
    }
    const double norm = v.norm();
    if (!(norm > 0.0)) throw DegenerateInputError("OrthoPolyBasis: lost rank at degree " + std::to_string(m));
    q.col(m) = v / norm;
  }
  return OuterProductBasis(n, k, BasisKind::kOrthoPoly, q);
}

BasisMatrix MakeBasis(BasisKind kind, int n, int k) {
  return kind == BasisKind::kDct ? DctBasis(n, k) : OrthoPolyBasis(n, k);
}

std::shared_ptr<const BasisMatrix> CachedBasis(BasisKind kind, int n, int k) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const BasisMatrix>> cache;
  const auto key = std::make_tuple(static_cast<int>(kind), n, k);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const BasisMatrix>(MakeBasis(kind, n, k));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

std::vector<RmseRow> BasisRmseStudy(const std::vector<PixelBlock>& blocks, int k_max,
                                    const std::vector<BasisKind>& kinds) {
  if (blocks.empty()) throw ParameterError("BasisRmseStudy: no blocks");
  const int n = blocks.front().n();
  for (const PixelBlock& b : blocks) {
    if (b.n() != n) throw ParameterError("BasisRmseStudy: blocks differ in size");
  }
  CheckNk(n, k_max, "BasisRmseStudy");

  const auto num_blocks = static_cast<Eigen::Index>(blocks.size());
  std::vector<RmseRow> rows(static_cast<std::size_t>(k_max) * kinds.size());
  for (std::size_t ki = 0; ki < kinds.size(); ++ki) {
    const auto basis = CachedBasis(kinds[ki], n, k_max);
    const Eigen::MatrixXd& p = basis->columns();
    // per_block(b, k-1) = RMSE of block b with the first k columns.
    Eigen::MatrixXd per_block(num_blocks, k_max);
#pragma omp parallel for schedule(static)
    for (Eigen::Index b = 0; b < num_blocks; ++b) {
      Eigen::VectorXd r = blocks[static_cast<std::size_t>(b)].values();
      for (int k = 0; k < k_max; ++k) {
        r -= p.col(k).dot(r) * p.col(k);
        per_block(b, k) = std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
      }
    }
    for (int k = 0; k < k_max; ++k) {
      rows[static_cast<std::size_t>(k) * kinds.size() + ki] =
          RmseRow{k + 1, kinds[ki], per_block.col(k).mean()};
    }
  }
  return rows;
}

}  // namespace scseg
